"""Independent reference evaluators for P(x, y).

``oracle_quadrature`` integrates

    P(x, y) = int_0^inf exp(-t^4 - x t^2) cos(y t) dt

with Gauss-Legendre panels in mpmath arithmetic at a configurable number of
digits. ``berry_howls_sum`` is the classical convergent power series

    P(x, y) = 1/4 sum_n (-1)^n Gamma((2n + 1)/4) a_{2n}(x, y),
    a_0 = 1, a_1 = y, a_n = (y a_{n-1} + 2x a_{n-2}) / n

in double precision.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .numerics import EPS, as_complex, canonical_y
from .results import (
    DomainError,
    EvalResult,
    MethodTag,
    NonConvergenceError,
    OracleConvergenceError,
    PearceyOverflowError,
    overflow_guard,
)

LN10 = math.log(10.0)
# rays through the origin stay inside |arg u| < pi/8, where exp(-u^4) decays
_ROTATIONS = np.linspace(-3 * np.pi / 32, 3 * np.pi / 32, 13)
_MAX_DPS = 3000
_MAX_PANELS = 200_000


@dataclass(frozen=True)
class OracleConfig:
    """Settings for :func:`oracle_quadrature`.

    ``rotation`` is the angle of the integration ray (|rotation| < pi/8) or
    ``"auto"`` to pick the ray that needs the fewest panels and the least
    extra precision. ``rotation=0.0`` integrates along the real axis.
    ``panels`` overrides the initial panel count.
    """

    digits: int = 50
    panels: int | None = None
    truncation_safety: float = 2 * LN10
    order: int = 32
    max_doublings: int = 8
    rotation: float | str = "auto"

    def __post_init__(self):
        if self.digits < 5:
            raise DomainError("oracle needs at least 5 digits")
        if self.rotation != "auto" and not abs(float(self.rotation)) < math.pi / 8:
            raise DomainError("rotation must satisfy |rotation| < pi/8")


# -- envelope of the integrand along a ray -----------------------------------


def _ray_coeffs(x: complex, y: complex, sigma: float) -> tuple[float, float, float]:
    """(c4, c2, c1) with |integrand(s e^{i sigma})| <= exp(-c4 s^4 - c2 s^2 + c1 s)."""
    rot = complex(math.cos(sigma), math.sin(sigma))
    c4 = math.cos(4 * sigma)
    c2 = (x * rot * rot).real
    c1 = abs((y * rot).imag)
    return c4, c2, c1


def _envelope_peak(c4: float, c2: float, c1: float) -> float:
    """max over s >= 0 of -c4 s^4 - c2 s^2 + c1 s."""
    cands = [0.0]
    for r in np.roots([-4 * c4, 0.0, -2 * c2, c1]):
        if abs(r.imag) < 1e-9 * max(1.0, abs(r)) and r.real > 0:
            cands.append(float(r.real))
    return max(-c4 * s**4 - c2 * s**2 + c1 * s for s in cands)


def _radius(c4: float, c2: float, c1: float, level: float) -> float:
    """Smallest T >= 2 with c4 s^4 + c2 s^2 - c1 s >= level for every s >= T."""
    roots = np.roots([c4, 0.0, c2, -c1, -level])
    real = [r.real for r in roots if abs(r.imag) < 1e-7 * max(1.0, abs(r))]
    return max([2.0] + real)


def truncation_radius(
    x,
    y,
    digits: int,
    truncation_safety: float = 2 * LN10,
    sigma: float = 0.0,
) -> float:
    """Cut-off T for the integral on the ray arg t = sigma.

    Smallest T >= 2 such that T^4 cos(4 sigma) + Re(x e^{2i sigma}) T^2
    - |Im(y e^{i sigma})| T >= digits * ln 10 + truncation_safety, i.e. the
    integrand envelope has fallen below 10^-digits (with margin) for all
    larger T.
    """
    if digits < 1:
        raise DomainError("digits must be positive")
    x = as_complex(x)
    y = as_complex(y)
    c4, c2, c1 = _ray_coeffs(x, y, sigma)
    return _radius(c4, c2, c1, digits * LN10 + truncation_safety)


@dataclass(frozen=True)
class _Plan:
    sigma: float
    radius: float
    breakpoints: np.ndarray
    dps: int
    cost: float


def _plan(x: complex, y: complex, sigma: float, digits: int, log10_scale: float, cfg: OracleConfig) -> _Plan:
    """Panel layout on one ray.

    ``log10_scale`` is the assumed log10 |P|; digits are lost to cancellation
    whenever the envelope peak exceeds it.
    """
    c4, c2, c1 = _ray_coeffs(x, y, sigma)
    peak = _envelope_peak(c4, c2, c1) / LN10
    loss = max(0.0, peak - log10_scale)
    radius = _radius(c4, c2, c1, (digits - log10_scale) * LN10 + cfg.truncation_safety)
    dps = int(math.ceil(digits + loss)) + 12
    if dps > _MAX_DPS:
        return _Plan(sigma=float(sigma), radius=radius, breakpoints=np.empty(0), dps=dps, cost=math.inf)

    s = np.linspace(0.0, radius, 4097)
    rot = complex(math.cos(sigma), math.sin(sigma))
    u = s * rot
    dphi = np.abs(-4 * u**3 - 2 * x * u) + abs(y)
    env = -c4 * s**4 - c2 * s**2 + c1 * s
    active = env >= (log10_scale - digits) * LN10 - cfg.truncation_safety
    density = np.where(active, dphi, 0.0) + 1.0 / radius
    cum = np.concatenate([[0.0], np.cumsum(0.5 * (density[1:] + density[:-1]) * np.diff(s))])
    # ~8 radians of variation per 32-point panel resolves ~50 digits
    per_panel = 8.0 * min(1.0, 60.0 / dps) * cfg.order / 32
    m = cfg.panels or int(math.ceil(cum[-1] / per_panel)) + 2
    if m > _MAX_PANELS:
        return _Plan(sigma=float(sigma), radius=radius, breakpoints=np.empty(0), dps=dps, cost=math.inf)
    bps = np.interp(np.linspace(0.0, cum[-1], m + 1), cum, s)
    bps[0], bps[-1] = 0.0, radius
    cost = m * (dps / 50.0) ** 1.6
    return _Plan(sigma=float(sigma), radius=radius, breakpoints=bps, dps=dps, cost=cost)


def _choose_plan(x: complex, y: complex, digits: int, log10_scale: float, cfg: OracleConfig) -> _Plan:
    if cfg.rotation != "auto":
        best = _plan(x, y, float(cfg.rotation), digits, log10_scale, cfg)
    else:
        best = _plan(x, y, 0.0, digits, log10_scale, cfg)
        for sigma in _ROTATIONS:
            if sigma == 0.0:
                continue
            cand = _plan(x, y, float(sigma), digits, log10_scale, cfg)
            if cand.cost < 0.8 * best.cost:
                best = cand
    if not math.isfinite(best.cost):
        raise OracleConvergenceError(f"no feasible quadrature ray at ({x}, {y})")
    return best


# -- Gauss-Legendre rule at arbitrary precision -------------------------------


@functools.lru_cache(maxsize=32)
def gauss_legendre_rule(order: int, dps: int) -> tuple[tuple, tuple]:
    """Nodes and weights on [-1, 1] computed by Newton iteration at ``dps`` digits."""
    with mpmath.workdps(dps + 10):
        nodes, weights = [], []
        for i in range(1, (order + 1) // 2 + 1):
            r = mpmath.cos(mpmath.pi * (i - mpmath.mpf(1) / 4) / (order + mpmath.mpf(1) / 2))
            for _ in range(100):
                p0, p1 = mpmath.mpf(1), r
                for k in range(2, order + 1):
                    p0, p1 = p1, ((2 * k - 1) * r * p1 - (k - 1) * p0) / k
                dp = order * (r * p1 - p0) / (r * r - 1)
                step = p1 / dp
                r -= step
                if abs(step) < mpmath.mpf(10) ** (-(dps + 5)):
                    break
            w = 2 / ((1 - r * r) * dp * dp)
            nodes.append(r)
            weights.append(w)
            if not (order % 2 == 1 and i == (order + 1) // 2):
                nodes.append(-r)
                weights.append(w)
    return tuple(nodes), tuple(weights)


def _integrate(x, y, sigma: float, breakpoints, order: int, dps: int):
    """Sum of panel rules; returns (integral, integral of |f|) at ``dps`` digits."""
    nodes, weights = gauss_legendre_rule(order, dps)
    with mpmath.workdps(dps):
        xm = mpmath.mpc(x)
        ym = mpmath.mpc(y)
        rot = mpmath.expjpi(mpmath.mpf(sigma) / mpmath.pi) if sigma else mpmath.mpc(1)
        total = mpmath.mpc(0)
        total_abs = mpmath.mpf(0)
        edges = [mpmath.mpf(float(b)) for b in breakpoints]
        for a, b in zip(edges[:-1], edges[1:]):
            mid = (a + b) / 2
            half = (b - a) / 2
            acc = mpmath.mpc(0)
            acc_abs = mpmath.mpf(0)
            for t, w in zip(nodes, weights):
                u = (mid + half * t) * rot
                u2 = u * u
                f = mpmath.exp(-u2 * u2 - xm * u2) * mpmath.cos(ym * u)
                acc += w * f
                acc_abs += w * abs(f)
            total += half * acc
            total_abs += half * acc_abs
        return total * rot, total_abs


def _refine(bps: np.ndarray) -> np.ndarray:
    mids = 0.5 * (bps[:-1] + bps[1:])
    out = np.empty(2 * len(bps) - 1)
    out[0::2] = bps
    out[1::2] = mids
    return out


def oracle_quadrature_report(x, y, cfg: OracleConfig = OracleConfig()) -> dict:
    """Like :func:`oracle_quadrature` but also returns the diagnostics."""
    x = as_complex(x)
    y = canonical_y(as_complex(y))
    digits = cfg.digits
    target = mpmath.mpf(10) ** (-(digits - 8))

    c4, c2, c1 = _ray_coeffs(x, y, 0.0)
    ray_scale = min(0.0, _envelope_peak(c4, c2, c1) / LN10)
    sigma = _choose_plan(x, y, digits, ray_scale, cfg).sigma
    # first guess: no cancellation, |P| comparable to the envelope peak on the chosen ray
    log10_scale = _envelope_peak(*_ray_coeffs(x, y, sigma)) / LN10
    fixed = OracleConfig(
        digits=digits,
        panels=cfg.panels,
        truncation_safety=cfg.truncation_safety,
        order=cfg.order,
        max_doublings=cfg.max_doublings,
        rotation=sigma,
    )
    for _attempt in range(8):
        plan = _choose_plan(x, y, digits, log10_scale, fixed)
        bps = plan.breakpoints
        coarse, _ = _integrate(x, y, plan.sigma, bps, cfg.order, plan.dps)
        prev_diff = None
        slow_steps = 0
        for _ in range(cfg.max_doublings):
            bps = _refine(bps)
            fine, fine_abs = _integrate(x, y, plan.sigma, bps, cfg.order, plan.dps)
            with mpmath.workdps(plan.dps):
                diff = abs(fine - coarse)
                mag = abs(fine)
                settled = diff <= target * mag
                # no further progress possible at this working precision
                stalled = diff <= mpmath.mpf(10) ** (-(plan.dps - 6)) * fine_abs
                # a resolved Gauss rule gains far more than 10^3 per doubling;
                # twice less than that means rounding noise dominates
                if prev_diff is not None and diff > prev_diff / 1000:
                    slow_steps += 1
                else:
                    slow_steps = 0
                stalled = stalled or slow_steps >= 2
            prev_diff = diff
            coarse = fine
            if settled or stalled:
                break
        else:
            raise OracleConvergenceError(
                f"quadrature at ({x}, {y}) did not settle after {cfg.max_doublings} doublings"
            )
        with mpmath.workdps(plan.dps):
            if mag == 0:
                actual = log10_scale - 20
                lost = math.inf
            else:
                actual = float(mpmath.log10(mag))
                lost = float(mpmath.log10(fine_abs / mag))
        # |P| far below the assumed level means the tail cut and precision were too coarse
        if settled and actual >= log10_scale - 1 and lost <= plan.dps - digits - 4:
            with mpmath.workdps(digits):
                value = +fine
            return {
                "value": value,
                "digits": digits,
                "sigma": plan.sigma,
                "radius": plan.radius,
                "panels": len(bps) - 1,
                "dps": plan.dps,
                "cancellation_digits": lost,
                "doubling_difference": diff,
            }
        log10_scale = min(log10_scale, actual) - 3
    raise OracleConvergenceError(f"quadrature at ({x}, {y}) kept losing precision")


def oracle_quadrature(x, y, cfg: OracleConfig = OracleConfig()) -> mpmath.mpc:
    """P(x, y) to about ``cfg.digits`` significant digits, as an mpmath number."""
    return oracle_quadrature_report(x, y, cfg)["value"]


def oracle_value(x: complex, y: complex, digits: int = 50) -> mpmath.mpc:
    """Cached :func:`oracle_quadrature` with default settings."""
    return _oracle_cached(as_complex(x), canonical_y(as_complex(y)), digits)


@functools.lru_cache(maxsize=4096)
def _oracle_cached(x: complex, y: complex, digits: int) -> mpmath.mpc:
    return oracle_quadrature(x, y, OracleConfig(digits=digits))


def relative_error(approx, x, y, digits: int = 50) -> float:
    """|approx - P(x, y)| / |P(x, y)| measured against the cached oracle."""
    exact = oracle_value(complex(x), complex(y), digits)
    with mpmath.workdps(digits):
        return float(abs(mpmath.mpc(approx) - exact) / abs(exact))


# -- convergent power series ---------------------------------------------------


def berry_howls_coefficients(x, y, count: int) -> list[complex]:
    """a_0 .. a_{count-1}; Taylor coefficients of exp(y t + x t^2)."""
    x = as_complex(x)
    y = as_complex(y)
    out = [1.0 + 0j, y][:count]
    for n in range(2, count):
        out.append((y * out[n - 1] + 2 * x * out[n - 2]) / n)
    return out


@overflow_guard
def berry_howls_sum(x, y, tol: float = EPS / 4, nmax: int = 50000) -> EvalResult:
    """Sum the convergent power series until two consecutive terms are negligible."""
    if tol <= 0:
        raise DomainError("tol must be positive")
    x = as_complex(x)
    y = canonical_y(as_complex(y))
    # (a_{m-1}, a_m) kept as mantissas times exp(log_scale), starting from a_{-1} = 0
    a_prev2, a_prev1 = 0j, 1.0 + 0j
    log_scale = 0.0
    total = 0j
    abs_sum = 0.0
    max_term = 0.0
    mags = []
    small_run = 0
    a_even = a_prev1
    m = 0  # index of a_prev1
    for n in range(nmax):
        # term uses a_{2n}; a_even is its mantissa
        lg = math.lgamma((2 * n + 1) / 4) + log_scale
        if a_even == 0:
            term = 0j
        else:
            try:
                mag = math.exp(math.log(abs(a_even)) + lg)
            except OverflowError:
                raise PearceyOverflowError(
                    f"convergent series terms overflow at ({x}, {y})"
                ) from None
            term = (a_even / abs(a_even)) * mag * (0.25 if n % 2 == 0 else -0.25)
        total += term
        tm = abs(term)
        abs_sum += tm
        max_term = max(max_term, tm)
        if len(mags) < 256:
            mags.append(tm)
        if tm <= tol * abs(total):
            small_run += 1
            if small_run == 2:
                break
        else:
            small_run = 0
        # advance two steps: a_{2n+1}, a_{2n+2}
        for _ in range(2):
            m += 1
            a_new = (y * a_prev1 + 2 * x * a_prev2) / m
            a_prev2, a_prev1 = a_prev1, a_new
        a_even = a_prev1
        big = max(abs(a_prev1), abs(a_prev2))
        if big and (big < 1e-150 or big > 1e150):
            a_prev1 /= big
            a_prev2 /= big
            a_even = a_prev1
            log_scale += math.log(big)
    else:
        raise NonConvergenceError(
            f"convergent series did not settle in {nmax} terms at ({x}, {y})",
            last_term=tm,
        )
    warnings = []
    cancellation = abs_sum / abs(total) if total != 0 else math.inf
    if cancellation > 1e6:
        warnings.append(f"cancellation: term sum exceeds result by {cancellation:.2e}")
    return EvalResult(
        value=total,
        method=MethodTag.CONVERGENT_SERIES,
        terms_used=n + 1,
        error_estimate=4 * EPS * abs_sum + EPS * abs(total),
        warnings=tuple(warnings),
        term_magnitudes=tuple(mags),
    )

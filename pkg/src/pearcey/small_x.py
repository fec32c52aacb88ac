"""Small-|x| expansion of P(x, y): a Taylor series in x whose coefficients are
the moments P_k(y) = 1/2 * int t^{2k} exp(-t^4 + i y t) dt.

The series converges for all complex x and y and is asymptotic as x -> 0.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass

from .numerics import EPS, as_complex, canonical_y, hyp_pfq
from .results import DomainError, EvalResult, MethodTag, PearceyOverflowError, overflow_guard

_LOWER_EVEN = (0.25, 0.5, 0.75)
_LOWER_ODD = (0.75, 1.25, 1.5)
# exp() of an lgamma above this would overflow once multiplied by O(1) factors
_LGAMMA_DIRECT_MAX = 600.0


@dataclass(frozen=True)
class SmallXCoeffs:
    y: complex
    values: tuple[complex, ...]
    source: str  # "direct" | "recurrence"


def _pk_pieces(k: int, y: complex) -> tuple[complex, complex, float, float]:
    """The two hypergeometric series of P_k(y) and their absolute-term sums."""
    a = (1 + 2 * k) / 4
    z = (y / 4) ** 4
    f1, r1 = hyp_pfq((a,), _LOWER_EVEN, z)
    f2, r2 = hyp_pfq((a + 0.5,), _LOWER_ODD, z)
    return f1, f2, r1.abs_sum, r2.abs_sum


def _scaled_pk(k: int, y: complex, log_scale: complex) -> tuple[complex, float]:
    """exp(log_scale) * P_k(y) and a bound on its rounding error.

    Passing log((-x)^k / k!) as ``log_scale`` keeps the gamma factors of
    high-order coefficients from overflowing before they meet the small
    Taylor weights.
    """
    a = (1 + 2 * k) / 4
    f1, f2, s1, s2 = _pk_pieces(k, y)
    lg1 = math.lgamma(a)
    lg2 = math.lgamma(a + 0.5)
    y2 = y * y
    if max(lg1, lg2) < _LGAMMA_DIRECT_MAX and log_scale.real < _LGAMMA_DIRECT_MAX:
        w = _exp(log_scale)
        g1 = w * math.gamma(a)
        g2 = w * math.gamma(a + 0.5)
    else:
        g1 = _exp(log_scale + lg1)
        g2 = _exp(log_scale + lg2)
    value = 0.25 * g1 * f1 - 0.125 * y2 * g2 * f2
    rounding = 4 * EPS * (0.25 * abs(g1) * s1 + 0.125 * abs(y2) * abs(g2) * s2)
    return value, rounding


def _exp(w: complex) -> complex:
    if w.real < -745:
        return 0j
    return complex(math.exp(w.real) * math.cos(w.imag), math.exp(w.real) * math.sin(w.imag))


def coeff_pk(k: int, y) -> complex:
    """P_k(y) = 1/2 int_R t^{2k} exp(-t^4 + i y t) dt from its 1F3 representation."""
    if k < 0:
        raise DomainError("k must be nonnegative")
    y = canonical_y(as_complex(y))
    value, _ = _scaled_pk(k, y, 0j)
    return value


def _pk_at_imaginary(n: int, v: float) -> float:
    """P_n(i v), which is real and positive; used by the remainder bounds."""
    return abs(coeff_pk(n, complex(0.0, abs(v))))


def coeff_pk_recurrence(
    seeds: tuple[complex, complex, complex, complex],
    k_max: int,
    y,
    form: str = "scaled",
) -> SmallXCoeffs:
    """Extend P_0..P_3 to P_0..P_{k_max} by a four-step recurrence.

    ``form="scaled"`` uses

        P_{k+4} = -(y/4)^2 P_{k+1} - (k+1)(2k+1)/8 P_k + (k+1)(k+7/4) P_{k+2}

    and ``form="derived"`` the same with coefficient (k+7/4) on P_{k+2},
    which is what integration by parts of the moment integrals produces. The
    two agree only for the first step. Neither is used on the production path.
    """
    if form not in ("scaled", "derived"):
        raise ValueError(f"unknown recurrence form {form!r}")
    y = as_complex(y)
    vals = [complex(s) for s in seeds[: min(4, k_max + 1)]]
    q = (y / 4) ** 2
    for k in range(0, k_max - 3):
        c2 = (k + 1.75) * ((k + 1) if form == "scaled" else 1)
        vals.append(-q * vals[k + 1] - (k + 1) * (2 * k + 1) / 8 * vals[k] + c2 * vals[k + 2])
    return SmallXCoeffs(y=y, values=tuple(vals), source="recurrence")


def small_x_coeffs(n: int, y) -> SmallXCoeffs:
    y = as_complex(y)
    return SmallXCoeffs(y=y, values=tuple(coeff_pk(k, y) for k in range(n)), source="direct")


def iter_small_x_terms(x: complex, y: complex) -> Iterator[tuple[complex, float]]:
    """Yield (P_k(y) (-x)^k / k!, rounding bound) for k = 0, 1, 2, ..."""
    y = canonical_y(y)
    if x == 0:
        yield _scaled_pk(0, y, 0j)
        while True:
            yield 0j, 0.0
    log_mx = _clog(-x)
    log_w = 0j
    k = 0
    while True:
        yield _scaled_pk(k, y, log_w)
        k += 1
        log_w += log_mx - math.log(k)


def _clog(z: complex) -> complex:
    return complex(math.log(abs(z)), math.atan2(z.imag, z.real))


def check_finite(total: complex, rounding: float, x: complex, y: complex) -> None:
    """Raise when the partial sum or its rounding bound left the double range."""
    if not (math.isfinite(total.real) and math.isfinite(total.imag) and math.isfinite(rounding)):
        raise PearceyOverflowError(f"small-x terms overflow at ({x}, {y})")


def bound_small_x(x, y, n: int) -> float:
    """Bound on |P(x, y) - (first n terms)| from the Lagrange remainder.

    Re x >= 0:  |x|^n / n! * P_n(i Im y)
    Re x <  0:  |x sqrt 2|^n / n! * 2^{1/4} * exp((Re x)^2 / 2) * P_n(i 2^{1/4} Im y)

    Returns ``inf`` when the Re x < 0 form overflows.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    x = as_complex(x)
    y = canonical_y(as_complex(y))
    if x == 0:
        return 0.0
    ax = abs(x)
    log_weight = n * math.log(ax) - math.lgamma(n + 1)
    try:
        if x.real >= 0:
            return math.exp(log_weight) * _pk_at_imaginary(n, y.imag)
        log_weight += 0.5 * n * math.log(2.0) + 0.25 * math.log(2.0) + 0.5 * x.real**2
        return math.exp(log_weight) * _pk_at_imaginary(n, 2**0.25 * y.imag)
    except OverflowError:
        return math.inf


@overflow_guard
def eval_small_x(x, y, n: int) -> EvalResult:
    """Partial sum of the first ``n`` terms of the small-|x| expansion."""
    if n < 1:
        raise DomainError("n must be at least 1")
    x = as_complex(x)
    y = canonical_y(as_complex(y))
    total = 0j
    rounding = 0.0
    mags = []
    terms = iter_small_x_terms(x, y)
    for _ in range(n):
        t, r = next(terms)
        total += t
        rounding += r
        mags.append(abs(t))
    next_term = abs(next(terms)[0])
    check_finite(total, rounding, x, y)

    warnings = []
    bound = bound_small_x(x, y, n)
    if math.isfinite(bound):
        truncation = bound
    else:
        truncation = next_term
        warnings.append("bound-overflow: using first omitted term")
    return EvalResult(
        value=total,
        method=MethodTag.SMALL_X,
        terms_used=n,
        error_estimate=truncation + rounding + EPS * abs(total),
        warnings=tuple(warnings),
        term_magnitudes=tuple(mags),
    )

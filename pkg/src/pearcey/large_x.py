"""Large-|x| asymptotic expansion of P(x, y) with Hermite coefficients.

    P(x, y) ~ sqrt(pi) exp(-y^2/(4x)) / (2 sqrt x)
              * sum_k (-1)^k / (k! (4x)^{2k}) H_{4k}(y / (2 sqrt x))

valid for |arg x| < 3pi/4, uniformly in y with y/sqrt(x) bounded.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .numerics import (
    EPS,
    as_complex,
    canonical_y,
    gamma_real,
    hermite_scaled,
    hermite_scaled_all,
    kummer_m_negint,
    principal_arg,
)
from .results import DomainError, EvalResult, MethodTag, RegionError, overflow_guard

THETA_MAX = 0.75 * math.pi
SIGMA_MAX = math.pi / 8
_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class LargeXContext:
    x: complex
    y: complex
    alpha: complex
    theta: float
    sigma: float
    prefactor: complex

    @classmethod
    def build(cls, x: complex, y: complex, sigma: float | None = None) -> "LargeXContext":
        theta = principal_arg(x)
        if abs(theta) >= THETA_MAX or x == 0:
            raise RegionError(f"large-x expansion needs |arg x| < 3pi/4, got arg x = {theta:.6g}")
        if sigma is None:
            sigma = choose_sigma(x)
        sx = cmath.sqrt(x)
        prefactor = _SQRT_PI * cmath.exp(-y * y / (4 * x)) / (2 * sx)
        return cls(x=x, y=y, alpha=y / sx, theta=theta, sigma=sigma, prefactor=prefactor)


def choose_sigma(x) -> float:
    """Path rotation angle for the remainder bound.

    Aims at 2 sigma + arg x = 0 (largest cosines in the bound). The magnitude
    is capped at 7pi/64, or at the midpoint of the admissible interval
    ((|arg x| - pi/2)/2, pi/8) once |arg x| is close enough to 3pi/4 that the
    fixed cap would leave |arg x + 2 sigma| >= pi/2.
    """
    x = as_complex(x)
    theta = principal_arg(x)
    if abs(theta) >= THETA_MAX or x == 0:
        raise RegionError(f"no admissible sigma for arg x = {theta:.6g}")
    cap = max(SIGMA_MAX - math.pi / 64, (abs(theta) - math.pi / 2) / 4 + math.pi / 16)
    return max(-cap, min(cap, -theta / 2))


def large_x_summands(ctx: LargeXContext, n: int) -> list[complex]:
    """Normalized summands (-1)^k H_{4k}(alpha/2) / (k! (4x)^{2k}), k < n.

    With h = 2^-m H_m the k-th summand is (-1)^k h_{4k}(alpha/2) / (k! x^{2k}).
    """
    h = hermite_scaled_all(4 * (n - 1), ctx.alpha / 2)
    inv_x2 = 1 / (ctx.x * ctx.x)
    out = []
    w = 1.0 + 0j
    for k in range(n):
        if k:
            w *= -inv_x2 / k
        out.append(w * h[4 * k])
    return out


def bound_large_x(x, y, n: int, sigma: float) -> float:
    """Bound on the bracketed remainder R_n (relative to the common prefactor).

        exp(|y|^2/(4|x|) * cos^2(arg y - arg x - sigma) / cos(2 sigma + arg x))
        / (n! |4x|^{2n} cos^{2n + 1/2}(2 sigma + arg x))
        * H_{4n}(i |y| sin(sigma + arg y) / (2 sqrt|x| cos(2 sigma + arg x)))

    arg y is taken as 0 for y = 0.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    x = as_complex(x)
    y = canonical_y(as_complex(y))
    ax, ay = abs(x), abs(y)
    tx = principal_arg(x)
    ty = principal_arg(y) if y != 0 else 0.0
    c = math.cos(2 * sigma + tx)
    if abs(2 * sigma + tx) >= math.pi / 2 or c <= 0:
        raise RegionError(f"|2 sigma + arg x| = {abs(2 * sigma + tx):.6g} is not below pi/2")
    v = ay * math.sin(sigma + ty) / (2 * math.sqrt(ax) * c)
    # H_{4n}(i v) = 2^{4n} h_{4n}(i v), real and positive
    h = abs(hermite_scaled(4 * n, complex(0.0, v)))
    log_b = (
        ay * ay / (4 * ax) * math.cos(ty - tx - sigma) ** 2 / c
        - math.lgamma(n + 1)
        - 2 * n * math.log(4 * ax)
        - (2 * n + 0.5) * math.log(c)
        + 4 * n * math.log(2.0)
    )
    try:
        return math.exp(log_b) * h
    except OverflowError:
        return math.inf


@overflow_guard
def eval_large_x(x, y, n: int, sigma: float | None = None) -> EvalResult:
    """First ``n`` terms of the large-|x| expansion."""
    if n < 1:
        raise DomainError("n must be at least 1")
    x = as_complex(x)
    y = canonical_y(as_complex(y))
    ctx = LargeXContext.build(x, y, sigma)
    summands = large_x_summands(ctx, n + 1)
    partial = sum(summands[:n], 0j)
    value = ctx.prefactor * partial
    pre = abs(ctx.prefactor)
    next_term = pre * abs(summands[n])
    bound = pre * bound_large_x(x, y, n, ctx.sigma)
    rounding = EPS * pre * (4 * n + 2) * sum(abs(s) for s in summands[:n])
    return EvalResult(
        value=value,
        method=MethodTag.LARGE_X,
        terms_used=n,
        error_estimate=min(bound, next_term) + rounding,
        term_magnitudes=tuple(pre * abs(s) for s in summands[:n]),
    )


def term_large_x_kummer(x, y, k: int) -> complex:
    """k-th term of the Kummer-M form of the same expansion, divided by Gamma(1/2):

        (-1)^k Gamma(2k + 1/2) / (Gamma(1/2) k! x^{2k}) * M(-2k; 1/2; y^2/(4x))

    Comparable one-to-one with the Hermite summands.
    """
    x = as_complex(x)
    y = as_complex(y)
    if x == 0:
        raise DomainError("x must be nonzero")
    if k < 0:
        raise DomainError("k must be nonnegative")
    ratio = gamma_real(2 * k + 0.5) / gamma_real(0.5) / math.factorial(k)
    return (-1) ** k * ratio / x ** (2 * k) * kummer_m_negint(k, 0.5, y * y / (4 * x))

"""Expansion of P(x, y) for large |x| and |y| with y/x bounded.

Shifting the contour through the saddle t0 = i*gamma, gamma = y/(2x), gives

    P(x, y) ~ exp(-y^2/(4x) - y^4/(16 x^4)) / 2
              * sum_m A_{2m}(gamma) Gamma(m + 1/2) / (x - 6 gamma^2)^{m + 1/2}

where A_n are the Taylor coefficients of h(t) = exp(4i gamma^3 t - 4i gamma t^3 - t^4).
The series is usable while |arg(x - 6 gamma^2)| < 3pi/4.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .numerics import EPS, as_complex, canonical_y, principal_arg
from .results import DomainError, EvalResult, MethodTag, RegionError, overflow_guard

ARG_MAX = 0.75 * math.pi
CAUSTIC_EPS = 1e-8


@dataclass(frozen=True)
class LargeXYValidity:
    valid: bool
    shifted: complex
    arg_shifted: float
    distance: float
    threshold: float
    reason: str

    def __bool__(self) -> bool:
        return self.valid


@dataclass(frozen=True)
class LargeXYContext:
    x: complex
    y: complex
    gamma: complex
    shifted: complex
    prefactor: complex


def validity_large_xy(x, y, caustic_eps: float = CAUSTIC_EPS) -> LargeXYValidity:
    """Whether the expansion applies at (x, y).

    Requires |arg(x - 3y^2/(2x^2))| < 3pi/4 and that the shifted parameter is
    not within ``caustic_eps * max(1, |x|)`` of zero (the locus 2x^3 = 3y^2).
    """
    x = as_complex(x)
    y = as_complex(y)
    if x == 0:
        raise DomainError("x must be nonzero")
    g = y / (2 * x)
    shifted = x - 6 * g * g
    dist = abs(shifted)
    thr = caustic_eps * max(1.0, abs(x))
    arg = principal_arg(shifted)
    if dist <= thr:
        reason = f"too close to 2x^3 = 3y^2 (|x - 6 gamma^2| = {dist:.3g})"
        return LargeXYValidity(False, shifted, arg, dist, thr, reason)
    if abs(arg) >= ARG_MAX:
        reason = f"|arg(x - 6 gamma^2)| = {abs(arg):.6g} >= 3pi/4"
        return LargeXYValidity(False, shifted, arg, dist, thr, reason)
    return LargeXYValidity(True, shifted, arg, dist, thr, "ok")


def coeff_an(n: int, gamma) -> complex:
    """n-th Taylor coefficient of exp(4i g^3 t - 4i g t^3 - t^4), g = gamma."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    g = as_complex(gamma)
    b1 = 4j * g**3
    b3 = -4j * g
    total = 0j
    for k in range(n // 4 + 1):
        for j in range((n - 4 * k) // 3 + 1):
            m = n - 4 * k - 3 * j
            total += (
                b1**m * b3**j * (-1) ** k
                / (math.factorial(k) * math.factorial(j) * math.factorial(m))
            )
    return total


def build_context(x: complex, y: complex) -> LargeXYContext:
    check = validity_large_xy(x, y)
    if not check:
        raise RegionError(f"large-xy expansion not valid: {check.reason}")
    g = y / (2 * x)
    y2 = y * y
    prefactor = 0.5 * cmath.exp(-y2 / (4 * x) - y2 * y2 / (16 * x**4))
    return LargeXYContext(x=x, y=y, gamma=g, shifted=check.shifted, prefactor=prefactor)


def large_xy_summands(ctx: LargeXYContext, n: int) -> list[complex]:
    """A_{2m}(gamma) Gamma(m + 1/2) (x - 6 gamma^2)^{-(m + 1/2)} for m < n."""
    log_w = cmath.log(ctx.shifted)
    inv_w = 1 / ctx.shifted
    power = cmath.exp(-0.5 * log_w)
    gam = math.sqrt(math.pi)
    out = []
    for m in range(n):
        if m:
            power *= inv_w
            gam *= m - 0.5
        out.append(coeff_an(2 * m, ctx.gamma) * gam * power)
    return out


@overflow_guard
def eval_large_xy(x, y, n: int) -> EvalResult:
    """First ``n`` terms (m = 0..n-1) of the large-|x|, |y| expansion."""
    if n < 1:
        raise DomainError("n must be at least 1")
    x = as_complex(x)
    y = canonical_y(as_complex(y))
    ctx = build_context(x, y)
    summands = large_xy_summands(ctx, n + 1)
    pre = abs(ctx.prefactor)
    value = ctx.prefactor * sum(summands[:n], 0j)
    rounding = EPS * pre * (2 * n + 4) * sum(abs(s) for s in summands[:n])
    return EvalResult(
        value=value,
        method=MethodTag.LARGE_XY,
        terms_used=n,
        error_estimate=pre * abs(summands[n]) + rounding,
        term_magnitudes=tuple(pre * abs(s) for s in summands[:n]),
    )

"""Scalar special-function kernel: real gamma, pFq series, scaled Hermite
polynomials and Kummer's M for a negative even integer first parameter.

Everything here works in double precision and on Python ``complex``.
"""

from __future__ import annotations

import math
from collections.abc import Sequence

from .results import DomainError, NonConvergenceError, PearceyOverflowError, TruncationReport

EPS = 2.0**-52


def as_complex(z) -> complex:
    """Coerce ``z`` to a finite ``complex`` or raise :class:`DomainError`."""
    try:
        w = complex(z)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"not a complex number: {z!r}") from exc
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise DomainError(f"non-finite complex value: {z!r}")
    return w


def principal_arg(z: complex) -> float:
    """Principal argument in (-pi, pi]; zero and -0.0 imaginary parts map to the
    closed side of the cut so that arg(-1) = pi."""
    if z.imag == 0.0:
        return math.pi if z.real < 0 else 0.0
    return math.atan2(z.imag, z.real)


def canonical_y(y: complex) -> complex:
    """Representative of {y, -y} with Re y > 0, or Re y = 0 and Im y >= 0.

    P(x, y) is even in y; mapping both signs onto one representative makes
    that symmetry exact for every evaluation route.
    """
    if y.real < 0 or (y.real == 0 and y.imag < 0):
        return complex(-y.real, -y.imag) + 0j
    return complex(y.real + 0.0, y.imag + 0.0)


def gamma_real(x: float) -> float:
    """Gamma function for positive real arguments."""
    if not isinstance(x, (int, float)) or isinstance(x, bool):
        raise DomainError(f"gamma_real expects a real number, got {x!r}")
    if not math.isfinite(x) or x <= 0:
        raise DomainError(f"gamma_real requires finite x > 0, got {x!r}")
    return math.gamma(x)


def _check_lower(lower: Sequence[float]) -> None:
    for b in lower:
        if b <= 0 and float(b).is_integer():
            raise DomainError(f"lower parameter {b} is a nonpositive integer")


def hyp_pfq(
    upper: Sequence[float],
    lower: Sequence[float],
    z: complex,
    tol: float = EPS / 4,
    max_terms: int = 2000,
) -> tuple[complex, TruncationReport]:
    """Generalized hypergeometric series pFq(upper; lower; z) by term recurrence.

    Summation stops once two consecutive terms satisfy
    ``|t_m| <= tol * |partial sum|``. A parameter present in both lists
    contributes a ratio of exactly 1, so e.g. 1F3(3/4; 1/4, 1/2, 3/4; z)
    equals 0F2(; 1/4, 1/2; z) to the last bit.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    _check_lower(lower)
    z = complex(z)

    term = 1.0 + 0j
    total = 0j
    mags: list[float] = []
    abs_sum = 0.0
    small_run = 0
    for m in range(max_terms):
        total += term
        try:
            mag = abs(term)
        except OverflowError:
            mag = math.inf
        if not (math.isfinite(mag) and math.isfinite(total.real) and math.isfinite(total.imag)):
            raise PearceyOverflowError(f"pFq terms overflow (|z| = {abs(z):.3g})")
        mags.append(mag)
        abs_sum += mag
        if mag <= tol * abs(total):
            small_run += 1
            if small_run == 2:
                return total, TruncationReport(
                    terms_used=m + 1,
                    last_term=mag,
                    max_term=max(mags),
                    abs_sum=abs_sum,
                    stop_reason="converged",
                    magnitudes=tuple(mags),
                )
        else:
            small_run = 0
        ratio = z / (m + 1)
        for a in upper:
            ratio *= a + m
        for b in lower:
            ratio /= b + m
        term *= ratio
    raise NonConvergenceError(
        f"pFq series did not converge in {max_terms} terms (|z| = {abs(z):.3g})",
        last_term=abs(term),
    )


def hermite_scaled_all(n: int, z: complex) -> list[complex]:
    """[h_0(z), ..., h_n(z)] with h_k = 2^-k H_k (physicists' Hermite).

    Uses h_{k+1} = z h_k - (k/2) h_{k-1}.
    """
    if n < 0:
        raise DomainError("Hermite order must be nonnegative")
    z = complex(z)
    out = [1.0 + 0j]
    if n == 0:
        return out
    out.append(z)
    for k in range(1, n):
        out.append(z * out[k] - 0.5 * k * out[k - 1])
    return out


def hermite_scaled(n: int, z: complex) -> complex:
    """2^-n H_n(z)."""
    return hermite_scaled_all(n, z)[n]


def kummer_m_negint(n: int, b: float, z: complex) -> complex:
    """Kummer M(-2n; b; z), a polynomial of degree 2n in z."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    if b <= 0 and float(b).is_integer():
        raise DomainError(f"b = {b} is a nonpositive integer")
    z = complex(z)
    a = -2 * n
    term = 1.0 + 0j
    total = term
    for m in range(2 * n):
        term *= (a + m) / ((b + m) * (m + 1)) * z
        total += term
    return total

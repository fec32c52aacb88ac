"""Public evaluation API: automatic method selection and truncation."""

from __future__ import annotations

import cmath
import math
from collections.abc import Sequence
from dataclasses import dataclass

import mpmath

from . import large_x, large_xy, reference, small_x
from .numerics import EPS, as_complex, canonical_y
from .results import (
    DomainError,
    EvalResult,
    MethodTag,
    NonConvergenceError,
    PearceyError,
    PearceyOverflowError,
    RegionError,
    overflow_guard,
)

_TIE_ORDER = {
    MethodTag.SMALL_X: 0,
    MethodTag.LARGE_X: 1,
    MethodTag.LARGE_XY: 2,
    MethodTag.CONVERGENT_SERIES: 3,
    MethodTag.QUADRATURE: 4,
}


@dataclass(frozen=True)
class SelectorPolicy:
    """Knobs for :func:`evaluate`.

    ``r_small`` and ``r_large`` split |x| and |y| into the small / moderate /
    large bands of the region map; they order the candidates but the final
    pick is always the smallest error estimate.
    """

    r_small: float = 2.0
    r_large: float = 8.0
    target_tol: float = 1e-10
    allow_oracle_fallback: bool = True
    max_asymptotic_terms: int = 10
    max_convergent_terms: int = 400
    oracle_digits: int = 30

    def __post_init__(self):
        if not 0 < self.r_small <= self.r_large:
            raise DomainError("need 0 < r_small <= r_large")
        if self.target_tol <= 0:
            raise DomainError("target_tol must be positive")


DEFAULT_POLICY = SelectorPolicy()


def optimal_truncation(term_magnitudes: Sequence[float]) -> int:
    """Number of leading terms kept: everything before the first strict increase.

    Exact zeros (odd coefficients that vanish identically) are skipped when
    looking for the increase.
    """
    if not term_magnitudes:
        raise ValueError("need at least one term")
    last = None
    for i, m in enumerate(term_magnitudes):
        if m == 0:
            continue
        if last is not None and m > last:
            return i
        last = m
    return len(term_magnitudes)


def _first_omitted(mags: Sequence[float], n: int) -> float:
    for m in mags[n:]:
        if m != 0:
            return m
    return 0.0


def classify_region(x, y, policy: SelectorPolicy = DEFAULT_POLICY) -> tuple[str, str]:
    """(|x| band, |y| band), each one of "small", "moderate", "large"."""

    def band(r: float) -> str:
        if r <= policy.r_small:
            return "small"
        if r < policy.r_large:
            return "moderate"
        return "large"

    return band(abs(complex(x))), band(abs(complex(y)))


# -- per-method runners at their own best truncation ---------------------------


def run_small_x(x: complex, y: complex, max_terms: int = 400, n: int | None = None) -> EvalResult:
    """Sum the small-|x| series until it stops changing (or ``n`` terms exactly)."""
    if n is not None:
        return small_x.eval_small_x(x, y, n)
    y = canonical_y(y)
    total = 0j
    rounding = 0.0
    mags: list[float] = []
    small_run = 0
    terms = small_x.iter_small_x_terms(x, y)
    k = 0
    for k in range(1, max_terms + 1):
        t, r = next(terms)
        total += t
        rounding += r
        mags.append(abs(t))
        if abs(t) <= EPS / 4 * abs(total):
            small_run += 1
            if small_run == 2:
                break
        else:
            small_run = 0
    small_x.check_finite(total, rounding, x, y)
    warnings = []
    bound = small_x.bound_small_x(x, y, k) if x != 0 else 0.0
    tail = 2 * abs(next(terms)[0]) if small_run < 2 else 0.0
    if not math.isfinite(bound):
        warnings.append("bound-overflow: using first omitted term")
        truncation = tail
    else:
        truncation = min(bound, tail) if small_run < 2 else min(bound, EPS * abs(total))
    if small_run < 2:
        warnings.append(f"not converged in {max_terms} terms")
    return EvalResult(
        value=total,
        method=MethodTag.SMALL_X,
        terms_used=k,
        error_estimate=truncation + rounding + EPS * abs(total),
        warnings=tuple(warnings),
        term_magnitudes=tuple(mags[:64]),
    )


def run_large_x(x: complex, y: complex, max_terms: int = 10, n: int | None = None) -> EvalResult:
    if n is not None:
        return large_x.eval_large_x(x, y, n)
    y = canonical_y(y)
    ctx = large_x.LargeXContext.build(x, y)
    summands = large_x.large_x_summands(ctx, max_terms + 1)
    mags = [abs(s) for s in summands]
    n = min(optimal_truncation(mags[:max_terms]), max_terms)
    return large_x.eval_large_x(x, y, n, ctx.sigma)


def run_large_xy(x: complex, y: complex, max_terms: int = 10, n: int | None = None) -> EvalResult:
    if n is not None:
        return large_xy.eval_large_xy(x, y, n)
    y = canonical_y(y)
    ctx = large_xy.build_context(x, y)
    summands = large_xy.large_xy_summands(ctx, max_terms + 1)
    mags = [abs(s) for s in summands]
    n = min(optimal_truncation(mags[:max_terms]), max_terms)
    res = large_xy.eval_large_xy(x, y, n)
    # skip identically-zero omitted terms when estimating the error
    omitted = abs(ctx.prefactor) * _first_omitted(mags, n)
    if omitted != res.error_estimate:
        rounding = EPS * abs(ctx.prefactor) * (2 * n + 4) * sum(mags[:n])
        res = EvalResult(
            value=res.value,
            method=res.method,
            terms_used=res.terms_used,
            error_estimate=omitted + rounding,
            warnings=res.warnings,
            term_magnitudes=res.term_magnitudes,
        )
    return res


def run_quadrature(x: complex, y: complex, digits: int = 30) -> EvalResult:
    value = reference.oracle_value(x, y, digits)
    return EvalResult(
        value=_to_complex(value),
        method=MethodTag.QUADRATURE,
        terms_used=0,
        error_estimate=None,
        digits=digits,
    )


def _to_complex(value) -> complex:
    with mpmath.workdps(20):
        if abs(value) > mpmath.mpf("1.7e308"):
            raise PearceyOverflowError(f"|P| = {mpmath.nstr(abs(value), 5)} exceeds double range")
        return complex(value)


@overflow_guard
def evaluate_method(
    x,
    y,
    method: MethodTag | str = MethodTag.AUTO,
    terms: int | None = None,
    tol: float | None = None,
    policy: SelectorPolicy = DEFAULT_POLICY,
) -> EvalResult:
    """Evaluate with a specific route, or with the selector for ``method="auto"``."""
    method = MethodTag(method)
    x = as_complex(x)
    y = as_complex(y)
    if terms is not None and terms < 1:
        raise DomainError("terms must be at least 1")
    if method is MethodTag.AUTO:
        if tol is not None:
            policy = SelectorPolicy(
                r_small=policy.r_small,
                r_large=policy.r_large,
                target_tol=tol,
                allow_oracle_fallback=policy.allow_oracle_fallback,
                max_asymptotic_terms=policy.max_asymptotic_terms,
                max_convergent_terms=policy.max_convergent_terms,
                oracle_digits=policy.oracle_digits,
            )
        return evaluate(x, y, policy)
    if method is MethodTag.SMALL_X:
        return run_small_x(x, y, policy.max_convergent_terms, terms)
    if method is MethodTag.LARGE_X:
        return run_large_x(x, y, policy.max_asymptotic_terms, terms)
    if method is MethodTag.LARGE_XY:
        return run_large_xy(x, y, policy.max_asymptotic_terms, terms)
    if method is MethodTag.CONVERGENT_SERIES:
        return reference.berry_howls_sum(x, y, tol=tol if tol is not None else EPS / 4)
    return run_quadrature(x, y, policy.oracle_digits)


def _candidates(x: complex, y: complex, policy: SelectorPolicy) -> list:
    xband, _ = classify_region(x, y, policy)
    runners = [
        (MethodTag.SMALL_X, lambda: run_small_x(x, y, policy.max_convergent_terms)),
        (MethodTag.CONVERGENT_SERIES, lambda: reference.berry_howls_sum(x, y)),
    ]
    # the asymptotic expansions describe one saddle only; for small |x| they can
    # return a tiny, self-consistent but wrong value, and at the caustic two
    # saddles merge
    if xband == "small" or abs(cmath.phase(x)) >= large_x.THETA_MAX:
        return runners
    check = large_xy.validity_large_xy(x, y)
    if check.distance <= check.threshold:
        return runners
    runners.append((MethodTag.LARGE_X, lambda: run_large_x(x, y, policy.max_asymptotic_terms)))
    if check:
        runners.append((MethodTag.LARGE_XY, lambda: run_large_xy(x, y, policy.max_asymptotic_terms)))
    if xband == "large":
        runners.sort(key=lambda r: r[0] in (MethodTag.SMALL_X, MethodTag.CONVERGENT_SERIES))
    return runners


_CONVERGENT = (MethodTag.SMALL_X, MethodTag.CONVERGENT_SERIES)


def _relative(res: EvalResult) -> float:
    if res.value == 0:
        return 0.0 if res.error_estimate == 0 else math.inf
    return res.error_estimate / abs(res.value)


def _drop_inconsistent(results: list[EvalResult]) -> list[EvalResult]:
    """Discard asymptotic results contradicted by a well-converged convergent one."""
    anchors = [r for r in results if r.method in _CONVERGENT and _relative(r) <= 1e-6]
    if not anchors:
        return results
    anchor = min(anchors, key=_relative)
    kept = []
    for r in results:
        if r.method not in _CONVERGENT:
            gap = abs(r.value - anchor.value)
            if gap > 4 * (r.error_estimate + anchor.error_estimate):
                continue
        kept.append(r)
    return kept


@overflow_guard
def evaluate(x, y, policy: SelectorPolicy = DEFAULT_POLICY) -> EvalResult:
    """P(x, y) by the most accurate applicable expansion.

    Every valid method is run at its optimal truncation and the smallest
    relative error estimate wins. When none reaches ``policy.target_tol`` (relative),
    the quadrature oracle is used if allowed.
    """
    x = as_complex(x)
    y = canonical_y(as_complex(y))
    results: list[EvalResult] = []
    notes: list[str] = []
    for tag, run in _candidates(x, y, policy):
        try:
            res = run()
        except (PearceyError, OverflowError, ZeroDivisionError) as exc:
            notes.append(f"{tag}: {exc}")
            continue
        v = res.value
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            notes.append(f"{tag}: non-finite value")
            continue
        if res.error_estimate is None or not math.isfinite(res.error_estimate):
            notes.append(f"{tag}: no usable error estimate")
            continue
        results.append(res)

    results = _drop_inconsistent(results)
    best = None
    if results:
        best = min(results, key=lambda r: (_relative(r), _TIE_ORDER[r.method]))
        if best.error_estimate <= policy.target_tol * abs(best.value):
            return best
    if policy.allow_oracle_fallback:
        fallback = run_quadrature(x, y, policy.oracle_digits)
        reason = "no expansion met the tolerance" if best else "no expansion was usable"
        return EvalResult(
            value=fallback.value,
            method=MethodTag.QUADRATURE,
            terms_used=0,
            error_estimate=None,
            digits=fallback.digits,
            warnings=(f"fallback: {reason}",),
        )
    if best is None:
        raise NonConvergenceError("no method produced a finite value: " + "; ".join(notes))
    return EvalResult(
        value=best.value,
        method=best.method,
        terms_used=best.terms_used,
        error_estimate=best.error_estimate,
        warnings=best.warnings + (f"unmet-tolerance: target {policy.target_tol:g}",),
        term_magnitudes=best.term_magnitudes,
    )


_ROT_X = cmath.exp(-0.25j * math.pi)
_ROT_Y = cmath.exp(0.125j * math.pi)
_OSC_FACTOR = 2 * cmath.exp(0.125j * math.pi)


def pearcey_oscillatory(x, y, policy: SelectorPolicy = DEFAULT_POLICY) -> complex:
    """The original oscillatory integral int_R exp(i(t^4 + x t^2 + y t)) dt.

    Obtained from 2 e^{i pi/8} P(x e^{-i pi/4}, y e^{i pi/8}).
    """
    x = as_complex(x)
    y = as_complex(y)
    return _OSC_FACTOR * evaluate(x * _ROT_X, y * _ROT_Y, policy).value


__all__ = [
    "DEFAULT_POLICY",
    "EvalResult",
    "MethodTag",
    "RegionError",
    "SelectorPolicy",
    "classify_region",
    "evaluate",
    "evaluate_method",
    "optimal_truncation",
    "pearcey_oscillatory",
    "run_large_x",
    "run_large_xy",
    "run_quadrature",
    "run_small_x",
]

"""Result containers and exceptions shared by every evaluation route."""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field


class PearceyError(Exception):
    """Base class for errors raised by this package."""


class DomainError(PearceyError, ValueError):
    """An argument lies outside the domain of a function."""


class RegionError(PearceyError, ValueError):
    """An expansion was requested outside its region of validity."""


class NonConvergenceError(PearceyError, ArithmeticError):
    """A series did not converge within its term budget."""

    def __init__(self, message: str, last_term: float = float("nan")):
        super().__init__(message)
        self.last_term = last_term


class OracleConvergenceError(NonConvergenceError):
    """The quadrature oracle failed its panel-doubling agreement test."""


class PearceyOverflowError(PearceyError, OverflowError):
    """The value of P(x, y) is not representable in double precision."""


class MethodTag(str, enum.Enum):
    SMALL_X = "small_x"
    LARGE_X = "large_x"
    LARGE_XY = "large_xy"
    CONVERGENT_SERIES = "convergent_series"
    QUADRATURE = "quadrature"
    AUTO = "auto"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class TruncationReport:
    """What happened while summing a series.

    ``magnitudes`` holds |t_m| for every term that was added, ``abs_sum`` is
    their sum (the scale against which rounding is measured).
    """

    terms_used: int
    last_term: float
    max_term: float
    abs_sum: float
    stop_reason: str
    magnitudes: tuple[float, ...] = ()


@dataclass(frozen=True)
class EvalResult:
    value: complex
    method: MethodTag
    terms_used: int
    error_estimate: float | None
    warnings: tuple[str, ...] = ()
    digits: int | None = None
    term_magnitudes: tuple[float, ...] = field(default=(), repr=False)

    def __post_init__(self):
        v = complex(self.value)
        finite = math.isfinite(v.real) and math.isfinite(v.imag)
        if self.error_estimate is not None:
            finite = finite and math.isfinite(self.error_estimate)
        if not finite:
            raise PearceyOverflowError(f"{self.method} left the double range")

    @property
    def relative_error_estimate(self) -> float | None:
        if self.error_estimate is None:
            return None
        if self.value == 0:
            return float("inf") if self.error_estimate > 0 else 0.0
        return self.error_estimate / abs(self.value)


def overflow_guard(func):
    """Re-raise bare float overflow from ``func`` as :class:`PearceyOverflowError`."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except PearceyError:
            raise
        except OverflowError as exc:
            raise PearceyOverflowError(f"{func.__name__}: {exc}") from exc

    return wrapper

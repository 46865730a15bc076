"""Bracketed bisection on strictly monotone continuous scalar functions.

Deliberately plain: bisection is unconditionally convergent on a genuine
sign change and bitwise deterministic, which the rest of the library
(and its reproducibility guarantees) relies on. 200 halvings exceed
double-precision resolution on any unit-scale bracket.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import IterationLimitError, NoSignChangeError, ValidationError

DEFAULT_ABS_TOL = 1e-12
DEFAULT_MAX_ITER = 200


def _sign(value: float) -> int:
    if value > 0.0:
        return 1
    if value < 0.0:
        return -1
    return 0


@dataclass(frozen=True)
class Bracket:
    """An interval [lo, hi] with a recorded sign change of f."""

    lo: float
    hi: float
    f_lo_sign: int
    f_hi_sign: int

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValidationError(f"bracket needs lo < hi, got [{self.lo!r}, {self.hi!r}]")
        if self.f_lo_sign == self.f_hi_sign:
            raise ValidationError("bracket endpoints must carry different signs")

    @classmethod
    def scan(cls, f: Callable[[float], float], lo: float, hi: float) -> "Bracket":
        """Evaluate f at the endpoints and build a Bracket, or fail."""
        f_lo, f_hi = f(lo), f(hi)
        s_lo, s_hi = _sign(f_lo), _sign(f_hi)
        if s_lo == s_hi:
            raise NoSignChangeError(lo, hi, f_lo, f_hi)
        return cls(lo, hi, s_lo, s_hi)


def solve_monotone(
    f: Callable[[float], float],
    bracket: Bracket,
    abs_tol: float = DEFAULT_ABS_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> float:
    """Root of f inside `bracket` by bisection.

    Stops once the bracket width falls below abs_tol (or f hits exactly 0)
    and returns the midpoint; the result always lies inside the initial
    bracket and is bitwise identical across calls with identical inputs.
    """
    if abs_tol <= 0.0:
        raise ValidationError(f"abs_tol must be > 0, got {abs_tol!r}")
    if max_iter < 1:
        raise ValidationError(f"max_iter must be >= 1, got {max_iter!r}")
    if bracket.f_lo_sign == 0:
        return bracket.lo
    if bracket.f_hi_sign == 0:
        return bracket.hi

    lo, hi = bracket.lo, bracket.hi
    lo_sign = bracket.f_lo_sign
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= abs_tol or mid <= lo or mid >= hi:
            return mid
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if _sign(f_mid) == lo_sign:
            lo = mid
        else:
            hi = mid
    if hi - lo <= abs_tol:
        return 0.5 * (lo + hi)
    raise IterationLimitError(lo, hi, max_iter)

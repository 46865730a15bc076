"""Exception hierarchy for relaygain.

Every solver failure is a structured exception carrying the offending
quantities, so callers (and the CLI exit-code mapping) can distinguish
bad inputs (ValidationError) from numerical/feasibility failures.
"""

from __future__ import annotations


class RelayGainError(Exception):
    """Base class for all relaygain errors."""


class ValidationError(RelayGainError, ValueError):
    """Invalid argument or malformed input document."""


class DeadLinkError(RelayGainError):
    """A solver depends on a channel gain that is exactly zero."""

    def __init__(self, link: str, message: str | None = None):
        self.link = link
        super().__init__(message or f"dead link {link}: gain is zero but the solver needs it")


class NoSignChangeError(RelayGainError):
    """Root bracketing failed: f has the same sign at both endpoints."""

    def __init__(self, lo: float, hi: float, f_lo: float, f_hi: float):
        self.lo, self.hi, self.f_lo, self.f_hi = lo, hi, f_lo, f_hi
        super().__init__(
            f"no sign change on [{lo!r}, {hi!r}]: f(lo)={f_lo!r}, f(hi)={f_hi!r}"
        )


class IterationLimitError(RelayGainError):
    """Bisection exceeded max_iter; carries the last bracket reached."""

    def __init__(self, lo: float, hi: float, iterations: int):
        self.lo, self.hi, self.iterations = lo, hi, iterations
        super().__init__(
            f"no convergence after {iterations} iterations; last bracket [{lo!r}, {hi!r}]"
        )


class InfeasibleRateError(RelayGainError):
    """A rate demand is at or above the chord bound of the achievable rate."""

    def __init__(self, protocol: str, rate: float, bound: float):
        self.protocol, self.rate, self.bound = protocol, rate, bound
        super().__init__(
            f"{protocol}: rate {rate!r} is not servable (requires rate < {bound!r})"
        )


class NoFeasibleOptionError(RelayGainError):
    """Relay selection found no protocol/candidate combination that is feasible."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("no feasible option: " + "; ".join(self.violations))


class GeometryError(RelayGainError):
    """Degenerate node placement (coincident nodes or overflowing gains)."""

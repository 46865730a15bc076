"""Exact optimal resource allocation for NCP and CP under proportional fairness.

For the non-collaborative protocol the optimal share beta of user 1 is the
unique root in (0, 1) of

    k * beta * ln(1 + h13*eps/beta) = (1 - beta) * ln(1 + h23*k*eps/(1 - beta))

and for the collaborative protocol (destination switched off while the
partner decodes, so h13 drops out) of

    (k+1) * beta * ln(1 + h12*eps/beta) = (1 - beta) * ln(1 + h23*k*eps/(1 - beta)).

Both residuals are strictly increasing with a sign change across (0, 1),
which justifies plain bisection. The residual is the single equivalent
form k*R1(beta) - R2(1-beta) = 0, avoiding the redundant (k+1) factors.
"""

from __future__ import annotations

import math
from typing import Callable

from .errors import ValidationError
from .model import Allocation, GainReport, LinkGains, OperatingPoint, Protocol
from .rootfind import Bracket, solve_monotone

# The residual extends continuously to the endpoints (b*ln(1+c/b) -> 0 as
# b -> 0+), so clamped endpoints keep the sign change without evaluating
# log of infinity.
_BETA_LO = 1e-15
_BETA_HI = 1.0 - 1e-15
_BETA_TOL = 1e-14


def _solve_share(residual: Callable[[float], float]) -> float:
    bracket = Bracket.scan(residual, _BETA_LO, _BETA_HI)
    return solve_monotone(residual, bracket, abs_tol=_BETA_TOL)


def _allocation(protocol: Protocol, beta: float, base_rate: float, k: float) -> Allocation:
    rate2 = k * base_rate
    return Allocation(protocol, beta, base_rate, rate2, base_rate + rate2)


def ncp_allocate(gains: LinkGains, op: OperatingPoint) -> Allocation:
    """Optimal NCP allocation; both users transmit directly to the destination."""
    gains.require_alive("h13", "h23")
    h13, h23, eps, k = gains.h13, gains.h23, op.epsilon, op.k

    def residual(b: float) -> float:
        return k * b * math.log1p(h13 * eps / b) - (1.0 - b) * math.log1p(h23 * k * eps / (1.0 - b))

    beta = _solve_share(residual)
    base_rate = beta * math.log1p(h13 * eps / beta)
    return _allocation(Protocol.NCP, beta, base_rate, k)


def cp_allocate(gains: LinkGains, op: OperatingPoint) -> Allocation:
    """Optimal CP allocation; the partner re-encodes and forwards both messages."""
    gains.require_alive("h12", "h23")
    h12, h23, eps, k = gains.h12, gains.h23, op.epsilon, op.k

    def residual(b: float) -> float:
        return (k + 1.0) * b * math.log1p(h12 * eps / b) - (1.0 - b) * math.log1p(h23 * k * eps / (1.0 - b))

    beta = _solve_share(residual)
    base_rate = beta * math.log1p(h12 * eps / beta)
    return _allocation(Protocol.CP, beta, base_rate, k)


def collaboration_gain(gains: LinkGains, op: OperatingPoint) -> GainReport:
    """Ratio of CP to NCP base rate; > 1 means collaboration pays off."""
    gains.require_alive("h12", "h13", "h23")
    ncp = ncp_allocate(gains, op)
    cp = cp_allocate(gains, op)
    if ncp.base_rate <= 0.0:
        raise ValidationError("NCP base rate vanished; gain undefined")
    gain = cp.base_rate / ncp.base_rate
    return GainReport(gain=gain, ncp=ncp, cp=cp, collaborate=gain > 1.0)

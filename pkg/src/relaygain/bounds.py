"""Closed-form bounds on the optimal base rate, and its asymptotic limits.

Two constructions sandwich the exact base rate for every operating point:

* high-TERN pair: first-order tangents to the two rate curves at the
  share each protocol approaches as eps -> inf (1/(k+1) for NCP,
  1/(k+2) for CP); tangents of concave curves lie above them, so their
  intersection upper-bounds the max-min. The chord through each curve's
  endpoints lies below, so the chord intersection is a lower bound.
* low-TERN pair: the quadratic ln(1+x) >= x - x^2/2 under each curve
  gives two parabolas whose equalization point (a stable quadratic root)
  lower-bounds the rate; the curve endpoints min{...} upper-bound it.

All four brackets hold for every eps; tightness alternates with regime.
Negative parabola values are clamped at zero (rates are nonnegative).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import LinkGains, OperatingPoint, _check_positive

# Below this the direct formula for ln(1+c) - c/(1+c) loses ~half its
# digits to cancellation; the series keeps full precision and the bound
# construction stays continuous through c -> 0.
_SERIES_CUTOFF = 1e-4
_DEGENERATE_REL = 1e-12


@dataclass(frozen=True)
class BoundPair:
    """A (lower, upper) bracket on the base rate, in nats.

    ``beta_at_bound`` is the resource share realizing the bound
    construction when it falls inside (0, 1); ``degenerate`` marks the
    equal-gain case where the low-TERN quadratic collapses to its linear
    limit.
    """

    lower: float
    upper: float
    beta_at_bound: float | None = None
    degenerate: bool = False


def _tangent_gap(c: float) -> float:
    """ln(1+c) - c/(1+c), the curvature gap of the tangent construction."""
    if c < _SERIES_CUTOFF:
        return c * c * (0.5 + c * (-2.0 / 3.0 + c * (0.75 - 0.8 * c)))
    return math.log1p(c) - c / (1.0 + c)


def _tangent_construction(h_first: float, h23: float, eps: float, k: float,
                          kappa: float) -> tuple[float, float]:
    """Intersection (beta, value) of the two tangent lines.

    kappa = k for NCP, k+1 for CP; the tangent point sits at 1/(kappa+1).
    """
    m = kappa + 1.0
    a = m * h_first * eps
    b = h23 * k * eps * m / kappa
    big_a, big_b = math.log1p(a), math.log1p(b)
    gap_a, gap_b = _tangent_gap(a), _tangent_gap(b)
    den = kappa * gap_a + gap_b
    upper = (big_a * gap_b + kappa * big_b * gap_a) / (m * den)
    beta = 1.0 / m + kappa * (big_b - big_a) / (m * den)
    return beta, upper


def _chord_intersection(h_first: float, h23: float, eps: float, k: float,
                        kappa: float) -> float:
    """Value where the two endpoint chords cross: X*Y/(X+Y)."""
    x = math.log1p(h_first * eps)
    y = math.log1p(k * h23 * eps) / kappa
    return x * y / (x + y)


def _parabola_peak(h_a: float, h_b: float, eps: float, kappa: float) -> tuple[float, float, bool]:
    """Equalize the two second-order lower parabolas.

    Solves (h_b - h_a) b^2 + (eps*(h_a^2 + kappa*h_b^2)/2 + h_a - h_b) b
    - eps*h_a^2/2 = 0 for its unique root in (0, 1]; returns
    (beta, parabola value, degenerate flag).
    """
    quad = h_b - h_a
    lin = 0.5 * eps * (h_a * h_a + kappa * h_b * h_b) + h_a - h_b
    const = -0.5 * eps * h_a * h_a
    degenerate = abs(quad) <= _DEGENERATE_REL * max(h_a, h_b)
    if degenerate:
        beta = -const / lin
    else:
        disc = math.sqrt(max(lin * lin - 4.0 * quad * const, 0.0))
        q = -0.5 * (lin + math.copysign(disc, lin))
        candidates = [q / quad]
        if q != 0.0:
            candidates.append(const / q)
        feasible = [r for r in candidates if 0.0 < r <= 1.0]
        beta = feasible[0] if feasible else min(1.0, max(candidates[0], 1e-300))
    value = h_a * eps - h_a * h_a * eps * eps / (2.0 * beta)
    return beta, value, degenerate


def _in_unit(beta: float) -> float | None:
    return beta if 0.0 < beta < 1.0 else None


def ncp_bounds_high_tern(gains: LinkGains, op: OperatingPoint) -> BoundPair:
    """Tangent upper / chord lower bracket on the NCP base rate."""
    gains.require_alive("h13", "h23")
    beta, upper = _tangent_construction(gains.h13, gains.h23, op.epsilon, op.k, op.k)
    lower = _chord_intersection(gains.h13, gains.h23, op.epsilon, op.k, op.k)
    return BoundPair(lower, upper, _in_unit(beta))


def cp_bounds_high_tern(gains: LinkGains, op: OperatingPoint) -> BoundPair:
    """Tangent upper / chord lower bracket on the CP base rate."""
    gains.require_alive("h12", "h23")
    kappa = op.k + 1.0
    beta, upper = _tangent_construction(gains.h12, gains.h23, op.epsilon, op.k, kappa)
    lower = _chord_intersection(gains.h12, gains.h23, op.epsilon, op.k, kappa)
    return BoundPair(lower, upper, _in_unit(beta))


def ncp_bounds_low_tern(gains: LinkGains, op: OperatingPoint) -> BoundPair:
    """Parabola lower / endpoint upper bracket on the NCP base rate."""
    gains.require_alive("h13", "h23")
    h13, h23, eps, k = gains.h13, gains.h23, op.epsilon, op.k
    beta, value, degenerate = _parabola_peak(h13, h23, eps, k)
    upper = min(math.log1p(h13 * eps), math.log1p(k * h23 * eps) / k)
    return BoundPair(max(0.0, value), upper, _in_unit(beta), degenerate)


def cp_bounds_low_tern(gains: LinkGains, op: OperatingPoint) -> BoundPair:
    """Parabola lower / endpoint upper bracket on the CP base rate.

    The partner curve enters through its low-TERN slope k*h23/(k+1) with
    fairness weight k+1 in the curvature term.
    """
    gains.require_alive("h12", "h23")
    h12, h23, eps, k = gains.h12, gains.h23, op.epsilon, op.k
    relayed = k * h23 / (k + 1.0)
    beta, value, degenerate = _parabola_peak(h12, relayed, eps, k + 1.0)
    upper = min(math.log1p(h12 * eps), math.log1p(k * h23 * eps) / (k + 1.0))
    return BoundPair(max(0.0, value), upper, _in_unit(beta), degenerate)


def low_tern_gain_limit(gains: LinkGains, k: float) -> float:
    """Limit of the collaboration gain as eps -> 0+."""
    k = _check_positive("k", k)
    gains.require_alive("h12", "h13", "h23")
    return min(gains.h12, k / (k + 1.0) * gains.h23) / min(gains.h13, gains.h23)


def high_tern_gain_limit(k: float) -> float:
    """Limit of the collaboration gain as eps -> inf: (k+1)/(k+2) < 1."""
    k = _check_positive("k", k)
    return (k + 1.0) / (k + 2.0)


def small_k_gain_slope(gains: LinkGains, eps: float) -> float:
    """Limit of gain/k as k -> 0+: h23*eps / ln(1 + h13*eps)."""
    eps = _check_positive("eps", eps)
    gains.require_alive("h13", "h23")
    return gains.h23 * eps / math.log1p(gains.h13 * eps)

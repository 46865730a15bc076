"""Path-loss geometry: gains from positions, relay placement, figure sweeps.

Gains follow h_ij = d_ij^(-eta) on the plane, with the source/destination
pair at (-1/2, 0) and (1/2, 0) in the standard configurations so that
h13 = 1. For a collinear relay at distance d from the source the maximal
low-TERN collaboration gain over d is (1 + (k/(k+1))^(1/eta))^eta,
attained at d* = 1/(1 + (k/(k+1))^(1/eta)).

Sweeps evaluate a full cartesian grid in deterministic row-major order
(first coordinate outer); symmetric ranges are mirrored exactly so that
records at (x, y) and (x, -y) are bitwise identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .allocation import cp_allocate, ncp_allocate
from .energy import feasible, min_tern, resource_usage
from .errors import GeometryError, ValidationError
from .model import LinkGains, OperatingPoint, Protocol, _check_finite, _check_positive

# Beyond this the relay sits so close to an endpoint that solver brackets
# lose meaning; grid points are flagged degenerate instead of evaluated.
OVERFLOW_GAIN = 1e12

Point = tuple[float, float]


@dataclass(frozen=True)
class Placement:
    """Node positions on the plane plus the path-loss exponent."""

    source: Point
    destination: Point
    relay: Point
    eta: float

    def __post_init__(self):
        for name in ("source", "destination", "relay"):
            p = getattr(self, name)
            if not (isinstance(p, tuple) and len(p) == 2):
                raise ValidationError(f"{name} must be an (x, y) tuple, got {p!r}")
            object.__setattr__(self, name, (_check_finite(f"{name}.x", p[0]),
                                            _check_finite(f"{name}.y", p[1])))
        object.__setattr__(self, "eta", _check_positive("eta", self.eta))
        if self.source == self.destination:
            raise GeometryError("source and destination coincide")


@dataclass(frozen=True)
class SweepRecord:
    """One grid point of a sweep: coordinates, headline value, extras."""

    coords: tuple[float, ...]
    gain: float | None
    extra: dict
    feasible: bool = True
    degenerate: bool = False


def _distance(a: Point, b: Point) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def gains_from_placement(p: Placement) -> LinkGains:
    """h_ij = d_ij^(-eta) with Euclidean distances."""
    d12 = _distance(p.source, p.relay)
    d13 = _distance(p.source, p.destination)
    d23 = _distance(p.relay, p.destination)
    if d12 == 0.0 or d23 == 0.0:
        raise GeometryError("relay coincides with an endpoint")
    return LinkGains(h12=d12 ** -p.eta, h13=d13 ** -p.eta, h23=d23 ** -p.eta)


def collinear_gains(d: float, eta: float) -> LinkGains:
    """Relay on the unit source-destination segment at distance d from the source."""
    d = _check_finite("d", d)
    eta = _check_positive("eta", eta)
    if not 0.0 < d < 1.0:
        raise ValidationError(f"d must lie in (0, 1), got {d!r}")
    return LinkGains(h12=d ** -eta, h13=1.0, h23=(1.0 - d) ** -eta)


def optimal_relay_location(k: float, eta: float) -> float:
    """Collinear relay position maximizing the low-TERN gain; always in (1/2, 1)."""
    k = _check_positive("k", k)
    eta = _check_positive("eta", eta)
    return 1.0 / (1.0 + (k / (k + 1.0)) ** (1.0 / eta))


def max_geometric_gain(k: float, eta: float) -> float:
    """Peak low-TERN collaboration gain over collinear relay placements."""
    k = _check_positive("k", k)
    eta = _check_positive("eta", eta)
    return (1.0 + (k / (k + 1.0)) ** (1.0 / eta)) ** eta


def grid_values(lo: float, hi: float, step: float) -> list[float]:
    """Inclusive-endpoint grid lo, lo+step, ...; symmetric ranges mirror exactly."""
    lo = _check_finite("lo", lo)
    hi = _check_finite("hi", hi)
    step = _check_positive("step", step)
    n = int(math.floor((hi - lo) / step * (1.0 + 1e-12))) + 1
    if n < 2:
        raise ValidationError(f"empty grid: step {step!r} exceeds range [{lo!r}, {hi!r}]")
    values = [lo + i * step for i in range(n)]
    if abs(values[-1] - hi) <= 1e-9 * step:
        values[-1] = hi
    if lo == -hi and values[-1] == hi:
        # mirror so that y and -y rows are bitwise-identical inputs
        for i in range(n // 2):
            values[n - 1 - i] = -values[i]
        if n % 2 and abs(values[n // 2]) <= 1e-6 * step:
            values[n // 2] = 0.0
    return values


def _gain_point(gains: LinkGains, op: OperatingPoint) -> tuple[float, dict]:
    ncp = ncp_allocate(gains, op)
    cp = cp_allocate(gains, op)
    extra = {
        "beta_ncp": ncp.beta,
        "beta_cp": cp.beta,
        "rate_ncp": ncp.base_rate,
        "rate_cp": cp.base_rate,
    }
    return cp.base_rate / ncp.base_rate, extra


def _sweep_plane_gain(params: Mapping[str, float]) -> list[SweepRecord]:
    xs = grid_values(params["x_min"], params["x_max"], params["x_step"])
    ys = grid_values(params["y_min"], params["y_max"], params["y_step"])
    eta = _check_positive("eta", params["eta"])
    op = OperatingPoint(params["epsilon"], params["k"])
    half = eta / 2.0
    records = []
    for x in xs:
        for y in ys:
            d12_sq = (x + 0.5) ** 2 + y * y
            d23_sq = (x - 0.5) ** 2 + y * y
            if d12_sq == 0.0 or d23_sq == 0.0:
                records.append(SweepRecord((x, y), None, {}, degenerate=True))
                continue
            h12 = d12_sq ** -half
            h23 = d23_sq ** -half
            if h12 > OVERFLOW_GAIN or h23 > OVERFLOW_GAIN:
                records.append(SweepRecord((x, y), None, {}, degenerate=True))
                continue
            gain, extra = _gain_point(LinkGains(h12, 1.0, h23), op)
            records.append(SweepRecord((x, y), gain, extra))
    return records


def _collinear_record(d: float, eta: float) -> LinkGains | None:
    gains = collinear_gains(d, eta)
    if gains.h12 > OVERFLOW_GAIN or gains.h23 > OVERFLOW_GAIN:
        return None
    return gains


def _sweep_collinear_gain(params: Mapping[str, float]) -> list[SweepRecord]:
    ds = grid_values(params["d_min"], params["d_max"], params["d_step"])
    eta = _check_positive("eta", params["eta"])
    op = OperatingPoint(params["epsilon"], params["k"])
    records = []
    for d in ds:
        gains = _collinear_record(d, eta)
        if gains is None:
            records.append(SweepRecord((d,), None, {}, degenerate=True))
            continue
        gain, extra = _gain_point(gains, op)
        records.append(SweepRecord((d,), gain, {"h12": gains.h12, "h23": gains.h23, **extra}))
    return records


def _sweep_rate_ratio(params: Mapping[str, float]) -> list[SweepRecord]:
    ks = grid_values(params["k_min"], params["k_max"], params["k_step"])
    eta = _check_positive("eta", params["eta"])
    epsilon = _check_positive("epsilon", params["epsilon"])
    gains = collinear_gains(params["d"], eta)
    records = []
    for k in ks:
        gain, extra = _gain_point(gains, OperatingPoint(epsilon, k))
        records.append(SweepRecord((k,), gain, extra))
    return records


def _sweep_resource_ratio(params: Mapping[str, float]) -> list[SweepRecord]:
    ds = grid_values(params["d_min"], params["d_max"], params["d_step"])
    eta = _check_positive("eta", params["eta"])
    rate = _check_positive("rate", params["rate"])
    op = OperatingPoint(params["epsilon"], params["k"])
    records = []
    for d in ds:
        gains = _collinear_record(d, eta)
        if gains is None:
            records.append(SweepRecord((d,), None, {}, degenerate=True))
            continue
        ok_ncp = feasible(Protocol.NCP, gains, op, rate)
        ok_cp = feasible(Protocol.CP, gains, op, rate)
        extra = {"h12": gains.h12, "h23": gains.h23,
                 "ncp_feasible": ok_ncp, "cp_feasible": ok_cp}
        if not (ok_ncp and ok_cp):
            records.append(SweepRecord((d,), None, extra, feasible=False))
            continue
        total_ncp = resource_usage(Protocol.NCP, gains, op, rate).total
        total_cp = resource_usage(Protocol.CP, gains, op, rate).total
        extra.update(total_ncp=total_ncp, total_cp=total_cp)
        records.append(SweepRecord((d,), total_ncp / total_cp, extra))
    return records


def _sweep_energy_ratio(params: Mapping[str, float]) -> list[SweepRecord]:
    ds = grid_values(params["d_min"], params["d_max"], params["d_step"])
    eta = _check_positive("eta", params["eta"])
    rate = _check_positive("rate", params["rate"])
    k = _check_positive("k", params["k"])
    records = []
    for d in ds:
        gains = _collinear_record(d, eta)
        if gains is None:
            records.append(SweepRecord((d,), None, {}, degenerate=True))
            continue
        eps_ncp = min_tern(Protocol.NCP, gains, k, rate).epsilon_min
        eps_cp = min_tern(Protocol.CP, gains, k, rate).epsilon_min
        records.append(SweepRecord((d,), eps_ncp / eps_cp,
                                   {"h12": gains.h12, "h23": gains.h23,
                                    "eps_ncp": eps_ncp, "eps_cp": eps_cp}))
    return records


_SWEEPS = {
    "plane_gain": (_sweep_plane_gain,
                   ("x_min", "x_max", "x_step", "y_min", "y_max", "y_step",
                    "epsilon", "k", "eta")),
    "collinear_gain": (_sweep_collinear_gain,
                       ("d_min", "d_max", "d_step", "epsilon", "k", "eta")),
    "rate_ratio": (_sweep_rate_ratio,
                   ("k_min", "k_max", "k_step", "d", "epsilon", "eta")),
    "resource_ratio": (_sweep_resource_ratio,
                       ("d_min", "d_max", "d_step", "epsilon", "k", "eta", "rate")),
    "energy_ratio": (_sweep_energy_ratio,
                     ("d_min", "d_max", "d_step", "k", "eta", "rate")),
}

SWEEP_KINDS = tuple(_SWEEPS)

_COLUMNS = {
    "plane_gain": (("x", "y"), "gain",
                   ("beta_ncp", "beta_cp", "rate_ncp", "rate_cp")),
    "collinear_gain": (("d",), "gain",
                       ("h12", "h23", "beta_ncp", "beta_cp", "rate_ncp", "rate_cp")),
    "rate_ratio": (("k",), "gain",
                   ("beta_ncp", "beta_cp", "rate_ncp", "rate_cp")),
    "resource_ratio": (("d",), "resource_ratio",
                       ("h12", "h23", "ncp_feasible", "cp_feasible",
                        "total_ncp", "total_cp")),
    "energy_ratio": (("d",), "energy_ratio",
                     ("h12", "h23", "eps_ncp", "eps_cp")),
}


def sweep_columns(kind: str) -> list[str]:
    """CSV column names for a sweep kind, in emission order."""
    coords, value, extras = _COLUMNS[kind]
    return [*coords, value, *extras, "feasible", "degenerate"]


def sweep(kind: str, params: Mapping[str, float]) -> list[SweepRecord]:
    """Evaluate one sweep kind over its full grid; see SWEEP_KINDS."""
    if kind not in _SWEEPS:
        raise ValidationError(f"unknown sweep kind {kind!r}; expected one of {SWEEP_KINDS}")
    fn, required = _SWEEPS[kind]
    missing = [name for name in required if name not in params]
    if missing:
        raise ValidationError(f"sweep {kind!r} missing parameters: {', '.join(missing)}")
    unknown = [name for name in params if name not in required]
    if unknown:
        raise ValidationError(f"sweep {kind!r} got unknown parameters: {', '.join(unknown)}")
    return fn(params)

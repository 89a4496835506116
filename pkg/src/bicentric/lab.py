"""Sweeps over the family parameter u and the invariance verdicts built on them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .closed_forms import n3_closed_invariants, n4_closed_invariants
from .derived import (
    bicentric_from_confocal,
    billiard_polygon,
    confocal_ellipses_from_bicentric,
    confocal_hyperbolas_from_bicentric,
    focus_inversive,
    hyperbolic_billiard_polygon,
    limiting_pedal,
)
from .errors import BicentricError, DomainError
from .euclid import (
    Circle,
    Polygon,
    collinearity_residual,
    concyclicity_residual,
    pedal_polygon,
    polar_polygon,
    sideline_distances,
)
from .family import BicentricPair, poncelet_solve, vertex_array, vertices
from .invariants import (
    gergonne_point,
    internal_cosines,
    pedal_sides_closed_form,
    perimeter,
    side_lengths,
    signed_perimeter,
    sum_of_cosines,
    sum_of_cosines_jacobi,
)

FAMILIES = ("bicentric", "billiard", "hyperbolic", "pedal_l1", "pedal_l2", "focus_inversive")
MEASUREMENTS = ("perimeter", "signed_perimeter", "sum_of_cosines", "collinearity", "gergonne_x", "gergonne_y")
MIN_SAMPLES = 16
SPREAD_FLOOR = 1e-30
NEAR_ZERO_MEAN = 1e-6
# a bicentric side closer than this (relative to R) to l2 sends a hyperbolic vertex too far out
HYPERBOLIC_EXCLUSION = 1e-4

DEFAULT_FAMILIES: tuple[tuple[int, int], ...] = tuple((n, 1) for n in range(3, 9)) + ((5, 2), (7, 2), (7, 3))
WITNESS_THRESHOLD = 1e-3


@dataclass(frozen=True)
class SweepReport:
    """Statistics of one measurement over admissible grid points.

    ``u_grid`` and ``values`` hold only the admissible samples; grid points
    that were skipped are listed in ``excluded``.
    """

    measurement: str
    family: str
    samples: int
    u_grid: list[float]
    values: list[float]
    min: float
    max: float
    mean: float
    spread_rel: float
    excluded: list[float] = field(default_factory=list)

    @property
    def spread_abs(self) -> float:
        return self.max - self.min

    @property
    def spread(self) -> float:
        """Relative spread, or the absolute one when the mean is essentially zero."""
        return self.spread_abs if abs(self.mean) < NEAR_ZERO_MEAN else self.spread_rel

    def to_dict(self) -> dict:
        return {
            "measurement": self.measurement,
            "family": self.family,
            "samples": self.samples,
            "u_grid": list(self.u_grid),
            "values": list(self.values),
            "min": self.min,
            "max": self.max,
            "mean": self.mean,
            "spread_rel": self.spread_rel,
            "excluded": list(self.excluded),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SweepReport":
        return cls(
            measurement=data["measurement"],
            family=data["family"],
            samples=int(data["samples"]),
            u_grid=[float(x) for x in data["u_grid"]],
            values=[float(x) for x in data["values"]],
            min=float(data["min"]),
            max=float(data["max"]),
            mean=float(data["mean"]),
            spread_rel=float(data["spread_rel"]),
            excluded=[float(x) for x in data.get("excluded", [])],
        )


def summarize(measurement: str, family: str, u_grid, values, excluded=()) -> SweepReport:
    vals = [float(v) for v in values]
    if not vals:
        raise DomainError(f"no admissible samples for {family}/{measurement}")
    lo, hi = min(vals), max(vals)
    mean = math.fsum(vals) / len(vals)
    spread_rel = (hi - lo) / max(abs(mean), SPREAD_FLOOR)
    return SweepReport(measurement, family, len(vals), [float(u) for u in u_grid], vals, lo, hi, mean, spread_rel, [float(u) for u in excluded])


@dataclass(frozen=True)
class InvariantVerdict:
    claim: str
    holds: bool
    spread_rel: float
    tolerance: float
    witness: bool = False  # holds means spread_rel > tolerance
    detail: str = ""


def _verdict(claim: str, spread: float, tol: float, detail: str = "", *, witness: bool = False) -> InvariantVerdict:
    ok = spread > tol if witness else spread < tol
    return InvariantVerdict(claim, bool(ok), float(spread), float(tol), witness, detail)


# ---------------------------------------------------------------------------
# families and measurements


def family_polygon(family: str, pair: BicentricPair, u: float, rho: float = 1.0) -> Polygon:
    return _derive(family, pair, vertices(pair, u), rho)


def _derive(family: str, pair: BicentricPair, P: Polygon, rho: float) -> Polygon:
    """Member of ``family`` built from the bicentric polygon ``P``."""
    if family == "bicentric":
        return P
    if family == "billiard":
        return polar_polygon(P, Circle(pair.l1, rho))
    if family == "hyperbolic":
        if sideline_distances(P, pair.l2).min() < HYPERBOLIC_EXCLUSION * pair.R:
            raise DomainError("a side passes too close to l2")
        return polar_polygon(P, Circle(pair.l2, rho))
    if family == "pedal_l1":
        return pedal_polygon(P, pair.l1)
    if family == "pedal_l2":
        return pedal_polygon(P, pair.l2)
    if family == "focus_inversive":
        return focus_inversive(polar_polygon(P, Circle(pair.l1, rho)), pair.l1, rho)
    raise DomainError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def _measurer(measurement: str, family: str, pair: BicentricPair, rho: float) -> Callable[[Polygon], float]:
    if measurement == "perimeter":
        return perimeter
    if measurement == "sum_of_cosines":
        return sum_of_cosines
    if measurement == "collinearity":
        return collinearity_residual
    if measurement == "signed_perimeter":
        if family != "hyperbolic":
            raise DomainError("signed_perimeter applies to the hyperbolic family only")
        table = confocal_hyperbolas_from_bicentric(pair, rho).outer
        return lambda P: signed_perimeter(P, table)
    if measurement in ("gergonne_x", "gergonne_y"):
        if pair.N != 3:
            raise DomainError("Gergonne points are measured on triangles (N = 3)")
        axis = 0 if measurement == "gergonne_x" else 1
        return lambda P: gergonne_point(P)[axis]
    raise DomainError(f"unknown measurement {measurement!r}; expected one of {', '.join(MEASUREMENTS)}")


def u_grid(pair: BicentricPair, samples: int) -> np.ndarray:
    """Uniform grid over [0, 2K), one full period of the vertex map."""
    return 2.0 * pair.K * np.arange(samples) / samples


def sweep(
    family: str,
    pair: BicentricPair,
    rho: float = 1.0,
    measurements: Sequence[str] = ("perimeter",),
    samples: int = 256,
) -> list[SweepReport]:
    if family not in FAMILIES:
        raise DomainError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if int(samples) != samples or samples < MIN_SAMPLES:
        raise DomainError(f"samples must be an integer >= {MIN_SAMPLES}")
    if isinstance(measurements, str):
        measurements = (measurements,)
    measurers = [_measurer(m, family, pair, rho) for m in measurements]
    good_u: list[float] = []
    excluded: list[float] = []
    columns: list[list[float]] = [[] for _ in measurements]
    grid = u_grid(pair, samples)
    for u, verts in zip(grid, vertex_array(pair, grid)):
        try:
            P = _derive(family, pair, Polygon(verts, pair.tau), rho)
            row = [f(P) for f in measurers]
        except BicentricError:
            excluded.append(float(u))
            continue
        good_u.append(float(u))
        for col, v in zip(columns, row):
            col.append(v)
    return [summarize(m, family, good_u, col, excluded) for m, col in zip(measurements, columns)]


def _sweep_one(family, pair, measurement, samples, rho=1.0) -> SweepReport:
    return sweep(family, pair, rho, (measurement,), samples)[0]


# ---------------------------------------------------------------------------
# conjecture harness


def conjecture1_harness(
    N_range: Iterable[int] = range(3, 9),
    tau_choices: Sequence[int] = (1,),
    pairs: Sequence[tuple[float, float]] = ((2.0, 0.7),),
    samples: int = 128,
    tol: float = 1e-8,
) -> list[InvariantVerdict]:
    """Cosine-sum verdicts for both limiting pedals; the N = 4 l1-pedal is a non-invariance witness."""
    out = []
    for N in N_range:
        if not 3 <= N <= 8:
            raise DomainError("N_range must lie in 3..8")
        for tau in tau_choices:
            if math.gcd(N, tau) != 1 or 2 * tau >= N:
                continue
            for R, d in pairs:
                pair = poncelet_solve(R, d, N, tau)
                for which in ("l1", "l2"):
                    rep = _sweep_one(f"pedal_{which}", pair, "sum_of_cosines", samples)
                    claim = f"conj1_N{N}_t{tau}_{which}"
                    detail = f"R={R} d={d} mean={rep.mean:.12g}"
                    if N == 4 and which == "l1":
                        out.append(_verdict(claim, rep.spread, WITNESS_THRESHOLD, detail, witness=True))
                    else:
                        out.append(_verdict(claim, rep.spread, tol, detail))
    return out


# ---------------------------------------------------------------------------
# full verification


def _families(n_subset):
    chosen = [f for f in DEFAULT_FAMILIES if n_subset is None or f[0] in n_subset]
    if not chosen:
        raise DomainError(f"no test family with N in {sorted(n_subset)}")
    return chosen


def _worst(claim: str, spreads: list[tuple[float, str]], tol: float, *, witness: bool = False) -> InvariantVerdict:
    if witness:
        spread, where = min(spreads)
    else:
        spread, where = max(spreads)
    return _verdict(claim, spread, tol, where, witness=witness)


def _pointwise_checks(pair: BicentricPair, us) -> tuple[float, float, float]:
    """Worst deviations: Jacobi cosine sum, Jacobi pedal sides, inversion vs pedal."""
    cos_dev = sides_dev = cor = 0.0
    for u in us:
        P = vertices(pair, u)
        cos_dev = max(cos_dev, abs(sum_of_cosines(P) - sum_of_cosines_jacobi(pair, u)))
        for which in ("l1", "l2"):
            Q = limiting_pedal(pair, u, which)
            geo = side_lengths(Polygon(np.roll(Q.vertices, 1, axis=0)))
            sides_dev = max(sides_dev, float(np.abs(geo - pedal_sides_closed_form(pair, u, which)).max()))
        inv = focus_inversive(billiard_polygon(pair, u), pair.l1)
        cor = max(cor, float(np.abs(inv.vertices - limiting_pedal(pair, u, "l1").vertices).max()))
    return cos_dev, sides_dev, cor


def _n4_reference(a: float = 2.0, b: float = 1.0) -> BicentricPair:
    """N = 4 pair whose l1 polar image (rho = 1) is the table with semi-axes (a, b)."""
    s = math.sqrt(a * a + b * b)
    circles, _, _ = bicentric_from_confocal(a, b, a * a / s, b * b / s, 1.0)
    return BicentricPair(circles.R, circles.r, circles.d, N=4, tau=1)


def verify_all(
    tol: float = 1e-9,
    n_subset: Iterable[int] | None = None,
    R: float = 2.0,
    d: float = 0.7,
    samples: int = 128,
) -> list[InvariantVerdict]:
    """Run every invariance claim. ``tol`` scales all invariance tolerances (1e-9 is nominal)."""
    if not tol > 0.0:
        raise DomainError("tol must be positive")
    n_subset = None if n_subset is None else set(n_subset)
    scale = tol / 1e-9
    fams = _families(n_subset)
    pairs = {nt: poncelet_solve(R, d, *nt) for nt in fams}
    rng_u = np.linspace(0.05, 3.0, 9)
    out: list[InvariantVerdict] = []

    thm1, thm2_l1, thm2_l2, cor1, neg, hyp, cos_dev, sides_dev, cor_id = ([] for _ in range(9))
    for (N, tau), pair in pairs.items():
        tag = f"N={N} tau={tau}"
        thm1.append((_sweep_one("bicentric", pair, "sum_of_cosines", samples).spread, tag))
        thm2_l1.append((_sweep_one("pedal_l1", pair, "perimeter", samples).spread, tag))
        thm2_l2.append((_sweep_one("pedal_l2", pair, "perimeter", samples).spread, tag))
        cor1.append((_sweep_one("focus_inversive", pair, "perimeter", samples).spread, tag))
        hyp.append((_sweep_one("hyperbolic", pair, "signed_perimeter", samples).spread, tag))
        if tau == 1 and N in (3, 5):
            neg.append((_sweep_one("bicentric", pair, "perimeter", samples).spread, tag))
        e, lm, c = _pointwise_checks(pair, rng_u)
        cos_dev.append((e, tag))
        sides_dev.append((lm, tag))
        cor_id.append((c, tag))

    out.append(_worst("thm1", thm1, 1e-9 * scale))
    out.append(_worst("cosine_sum_pointwise", cos_dev, 1e-10 * scale))
    out.append(_worst("thm2_l1", thm2_l1, 1e-9 * scale))
    out.append(_worst("thm2_l2", thm2_l2, 1e-9 * scale))
    out.append(_worst("pedal_sides_pointwise", sides_dev, 1e-9 * scale))
    out.append(_worst("cor1", cor1, 1e-9 * scale))
    out.append(_worst("cor1_identity", cor_id, 1e-9 * scale))
    out.append(_worst("hyperbolic_signed_perimeter", hyp, 1e-8 * scale))
    if neg:
        out.append(_worst("negative_control_bicentric_perimeter", neg, WITNESS_THRESHOLD, witness=True))

    conj_n = sorted({N for N, _ in fams})
    conj = conjecture1_harness(conj_n, (1,), ((R, d),), samples, 1e-8 * scale)
    witnesses = [v for v in conj if v.witness]
    regular = [v for v in conj if not v.witness]
    if regular:
        worst = max(regular, key=lambda v: v.spread_rel)
        out.append(InvariantVerdict("conj1", all(v.holds for v in regular), worst.spread_rel, worst.tolerance, False, worst.claim))
    for v in witnesses:
        out.append(InvariantVerdict("conj1_N4_l1_witness", v.holds, v.spread_rel, v.tolerance, True, v.detail))

    if n_subset is None or 4 in n_subset:
        out.extend(_n4_verdicts(scale, samples))
    if n_subset is None or 3 in n_subset:
        out.extend(_n3_verdicts(R, d, scale, samples))
    if n_subset is None:
        out.append(_roundtrip_verdict(pairs[(3, 1)], scale))
    return out


def _n4_verdicts(scale: float, samples: int) -> list[InvariantVerdict]:
    pair = _n4_reference()
    E = confocal_ellipses_from_bicentric(pair)
    H = confocal_hyperbolas_from_bicentric(pair)
    a, b = E.outer.a, E.outer.b
    closed = n4_closed_invariants(a, b)
    l1 = _sweep_one("pedal_l1", pair, "perimeter", samples)
    l2 = sweep("pedal_l2", pair, 1.0, ("perimeter", "sum_of_cosines", "collinearity"), samples)
    cyc = 0.0
    for u in u_grid(pair, 32):
        try:
            P = family_polygon("hyperbolic", pair, float(u))
        except BicentricError:
            continue
        cyc = max(cyc, concyclicity_residual(list(P.vertices) + list(H.outer.foci)))
    rel = lambda x, y: abs(x - y) / abs(y)  # noqa: E731
    return [
        _verdict("n4_l1_pedal_perimeter", rel(l1.mean, closed.L_dagger) + l1.spread, 1e-9 * scale, f"closed={closed.L_dagger:.12g}"),
        _verdict("n4_l2_pedal_perimeter", rel(l2[0].mean, closed.L_minus) + l2[0].spread, 1e-9 * scale, f"closed={closed.L_minus:.12g}"),
        _verdict("n4_l2_cosine_sum_4", max(abs(l2[1].min - 4.0), abs(l2[1].max - 4.0)), 1e-9 * scale),
        _verdict("n4_l2_collinear", l2[2].max, 1e-9 * scale),
        _verdict("n4_hyperbolic_concyclic", cyc, 1e-8 * scale),
    ]


def _n3_verdicts(R: float, d: float, scale: float, samples: int) -> list[InvariantVerdict]:
    pair = poncelet_solve(R, d, 3, 1)
    E = confocal_ellipses_from_bicentric(pair)
    closed = n3_closed_invariants(E.outer.a, E.outer.b)
    L = _sweep_one("pedal_l1", pair, "perimeter", samples)
    out = [_verdict("n3_L_dagger", abs(L.mean - closed.L_dagger) / closed.L_dagger, 1e-8 * scale)]
    cos_dev = 0.0
    for fam in ("bicentric", "pedal_l1", "pedal_l2"):
        rep = _sweep_one(fam, pair, "sum_of_cosines", samples)
        cos_dev = max(cos_dev, abs(rep.max - closed.sum_cos), abs(rep.min - closed.sum_cos))
    out.append(_verdict("n3_sum_of_cosines", cos_dev / closed.sum_cos, 1e-8 * scale))
    drift = 0.0
    for which in ("l1", "l2"):
        gx, gy = sweep(f"pedal_{which}", pair, 1.0, ("gergonne_x", "gergonne_y"), 64)
        drift = max(drift, math.hypot(gx.spread_abs, gy.spread_abs))
    out.append(_verdict("n3_gergonne_stationary", drift, 1e-8 * scale))
    # offset of the l1-pedal Gergonne point from the table centre toward l1
    g = np.asarray(gergonne_point(limiting_pedal(pair, 0.3, "l1")))
    o = np.asarray(E.outer.center)
    axis = (np.asarray(pair.l1) - o) / E.c
    x7 = float((g - o) @ axis)
    out.append(_verdict("n3_X7_1", abs(x7 - closed.X7_1), 1e-8 * scale, f"measured={x7:.12g} closed={closed.X7_1:.12g}"))
    return out


def _roundtrip_verdict(pair: BicentricPair, scale: float) -> InvariantVerdict:
    E = confocal_ellipses_from_bicentric(pair)
    H = confocal_hyperbolas_from_bicentric(pair)
    back, _, _ = bicentric_from_confocal(E.outer.a, E.outer.b, E.caustic.a, E.caustic.b, E.rho)
    err = max(abs(back.R - pair.R), abs(back.r - pair.r), abs(back.d - pair.d)) / pair.R
    err = max(err, abs(E.c - H.c) / E.c)
    return _verdict("confocal_roundtrip", err, 1e-10 * scale)

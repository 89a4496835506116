"""Poncelet circle pairs and the bicentric N-gon family.

Canonical frame: outer circle of radius R at the origin, inner circle of
radius r at (-d, 0). Vertices follow Jacobi's parametrization

    p_j(u) = R (cos 2 am(u + j sigma), sin 2 am(u + j sigma)),

with k^2 = 4 R d / ((R + d)^2 - r^2). Since p has period 2K in u, a family
that closes after N sides and tau turns has sigma = 2 tau K / N.

The closed-form N = 3 / N = 4 vertex formulas live in the "inner frame"
(inner circle at the origin, outer at (-d, 0)). ``swap_frame`` maps between
the two frames; it is the half-turn about (-d/2, 0), so it preserves
orientation and is its own inverse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .elliptic import complete_K, jacobi_am
from .errors import DomainError, SolverError
from .euclid import Circle, Line, Point, Polygon, _limiting_abscissae, sideline_distances

_CLOSURE_TOL = 1e-8
_TANGENCY_TOL = 1e-9
_STEP_RESIDUAL_TOL = 1e-12
_SOLVE_RESIDUAL_TOL = 1e-11


def modulus(R: float, r: float, d: float) -> float:
    """Elliptic modulus k of the pair, from k^2 = 4Rd / ((R+d)^2 - r^2)."""
    denom = (R + d) ** 2 - r**2
    if denom <= 0.0:
        raise DomainError("(R + d)^2 - r^2 must be positive")
    m = 4.0 * R * d / denom
    if not 0.0 < m < 1.0:
        raise DomainError(f"k^2 = {m!r} outside (0, 1); pair is not nested with d > 0")
    return math.sqrt(m)


def _check_nested(R: float, r: float, d: float, *, allow_concentric: bool = False) -> None:
    if not (R > 0.0 and r > 0.0):
        raise DomainError("radii must be positive")
    if d < 0.0 or (d == 0.0 and not allow_concentric):
        raise DomainError(f"center offset d must be positive, got {d!r}")
    if not r + d < R:
        raise DomainError(f"inner circle (r={r}, d={d}) is not strictly inside the outer one (R={R})")


@dataclass(frozen=True)
class CirclePair:
    """Outer circle (R, origin) and inner circle (r, (-d, 0)), strictly nested."""

    R: float
    r: float
    d: float

    def __post_init__(self) -> None:
        for name in ("R", "r", "d"):
            object.__setattr__(self, name, float(getattr(self, name)))
        _check_nested(self.R, self.r, self.d, allow_concentric=True)

    @property
    def outer(self) -> Circle:
        return Circle(Point(0.0, 0.0), self.R)

    @property
    def inner(self) -> Circle:
        return Circle(Point(-self.d, 0.0), self.r)

    @property
    def limiting_abscissae(self) -> tuple[float, float]:
        """(delta_plus, delta_minus); both negative for a nested pair."""
        if self.d == 0.0:
            raise DomainError("concentric pair: the limiting points degenerate")
        return _limiting_abscissae(self.R, self.r, self.d)

    @property
    def l1(self) -> Point:
        """Limiting point inside both circles."""
        return Point(self.limiting_abscissae[0], 0.0)

    @property
    def l2(self) -> Point:
        """Limiting point outside both circles."""
        return Point(self.limiting_abscissae[1], 0.0)

    def limiting_point(self, which: str) -> Point:
        if which == "l1":
            return self.l1
        if which == "l2":
            return self.l2
        raise DomainError(f"which must be 'l1' or 'l2', got {which!r}")


@dataclass(frozen=True)
class BicentricPair(CirclePair):
    """A circle pair admitting Poncelet N-gons that wind ``tau`` times."""

    N: int = 3
    tau: int = 1
    k: float = field(init=False)
    K: float = field(init=False)
    sigma: float = field(init=False)

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.d <= 0.0:
            raise DomainError("a bicentric pair needs d > 0 (use the concentric limit separately)")
        _check_winding(self.N, self.tau)
        k = modulus(self.R, self.r, self.d)
        K = complete_K(k)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "sigma", 2.0 * self.tau * K / self.N)

    @property
    def circles(self) -> CirclePair:
        return CirclePair(self.R, self.r, self.d)

    def as_dict(self) -> dict:
        return {"R": self.R, "r": self.r, "d": self.d, "N": self.N, "tau": self.tau}


def _check_winding(N: int, tau: int) -> None:
    if int(N) != N or N < 3:
        raise DomainError(f"N must be an integer >= 3, got {N!r}")
    if int(tau) != tau or tau < 1 or 2 * tau >= N:
        raise DomainError(f"tau must satisfy 1 <= tau < N/2, got tau={tau!r} for N={N}")
    if math.gcd(int(N), int(tau)) != 1:
        raise DomainError(f"gcd(N, tau) must be 1, got N={N}, tau={tau}")


# ---------------------------------------------------------------------------
# tangent step and the Poncelet solver


def _outer_point(R: float, u, k: float) -> np.ndarray:
    phi = jacobi_am(u, k)
    return R * np.stack([np.cos(2.0 * phi), np.sin(2.0 * phi)], axis=-1)


def _step_residual(R: float, r: float, d: float, k: float, s: float) -> float:
    """Signed distance of the inner center to the left of chord p(0) -> p(s), minus r."""
    p0 = (R, 0.0)
    p1 = _outer_point(R, s, k)
    return Line.through(p0, p1).signed_distance((-d, 0.0)) - r


def tangent_step(R: float, r: float, d: float) -> float:
    """The u-step sigma in (0, 2K) whose chord from p(0) = (R, 0) is tangent to
    the inner circle with the inner circle on its left (counter-clockwise travel)."""
    _check_nested(R, r, d)
    k = modulus(R, r, d)
    K = complete_K(k)
    lo, hi = 2.0 * K * 1e-12, 2.0 * K * (1.0 - 1e-12)
    f_lo = _step_residual(R, r, d, k, lo)
    f_hi = _step_residual(R, r, d, k, hi)
    if not (f_lo > 0.0 > f_hi):
        raise SolverError(f"tangent step not bracketed: residuals {f_lo:.3e} at 0+, {f_hi:.3e} at 2K-")
    sigma = brentq(lambda s: _step_residual(R, r, d, k, s), lo, hi, xtol=1e-15, rtol=8.9e-16, maxiter=200)
    res = _step_residual(R, r, d, k, sigma)
    if abs(res) > _STEP_RESIDUAL_TOL * R:
        raise SolverError(f"tangent step residual {res:.3e} exceeds {_STEP_RESIDUAL_TOL:g} R")
    return float(sigma)


def rotation_number(R: float, r: float, d: float) -> float:
    """Fraction of a full turn of the outer circle advanced per side, in (0, 1/2)."""
    return tangent_step(R, r, d) / (2.0 * complete_K(modulus(R, r, d)))


@lru_cache(maxsize=128)
def poncelet_solve(R: float, d: float, N: int, tau: int = 1, *, seed: int = 0) -> BicentricPair:
    """Inner radius r for which the pair (R, r, d) closes after N sides and tau turns.

    Bisects the rotation number over r in (0, R - d); it falls monotonically
    from 1/2 (r -> 0) to 0 (inner circle touching the outer one).
    """
    _check_winding(N, tau)
    if not (R > 0.0 and 0.0 < d < R):
        raise DomainError(f"need 0 < d < R, got R={R!r}, d={d!r}")
    target = tau / N

    def g(r: float) -> float:
        return rotation_number(R, r, d) - target

    lo, hi = 1e-9 * (R - d), (R - d) * (1.0 - 1e-9)
    g_lo, g_hi = g(lo), g(hi)
    if not (g_lo > 0.0 > g_hi):
        raise SolverError(
            f"no root for N={N}, tau={tau} on r in ({lo:.3g}, {hi:.3g}): "
            f"residuals {g_lo:.3e} and {g_hi:.3e}"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if g(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    r = 0.5 * (lo + hi)
    pair = BicentricPair(R, r, d, N, tau)
    step_err = abs(tangent_step(R, r, d) - pair.sigma)
    if step_err > _SOLVE_RESIDUAL_TOL:
        raise SolverError(f"solved r={r!r} leaves step residual {step_err:.3e}")
    rng = np.random.default_rng(seed)
    for u in rng.uniform(0.0, 2.0 * pair.K, size=16):
        if closure_residual(pair, u) > _CLOSURE_TOL:
            raise SolverError(f"closure check failed at u={u!r}")
        if tangency_residual(pair, vertices(pair, u)) > _TANGENCY_TOL:
            raise SolverError(f"tangency check failed at u={u!r}")
    return pair


# ---------------------------------------------------------------------------
# vertices


def vertex_array(pair: BicentricPair, u, count: int | None = None) -> np.ndarray:
    """Vertices p_0..p_{count-1} for each u; shape (..., count, 2)."""
    count = pair.N if count is None else count
    u_arr = np.asarray(u, dtype=float)
    args = u_arr[..., None] + pair.sigma * np.arange(count)
    return _outer_point(pair.R, args, pair.k)


def vertices(pair: BicentricPair, u: float) -> Polygon:
    return Polygon(vertex_array(pair, float(u)), pair.tau)


def closure_residual(pair: BicentricPair, u: float) -> float:
    """max_j |p_{j+N}(u) - p_j(u)| / R."""
    v = vertex_array(pair, float(u), 2 * pair.N)
    return float(np.hypot(*(v[pair.N :] - v[: pair.N]).T).max() / pair.R)


def tangency_residual(pair: CirclePair, P: Polygon) -> float:
    """max over sides of |dist(inner center, sideline) - r| / R."""
    dist = sideline_distances(P, (-pair.d, 0.0))
    return float(np.abs(dist - pair.r).max() / pair.R)


# ---------------------------------------------------------------------------
# inner frame and closed forms


def swap_frame(points, d: float) -> np.ndarray:
    """Map between the canonical frame and the inner-at-origin frame: (x, y) -> (-x - d, -y)."""
    pts = np.asarray(points, dtype=float)
    return np.stack([-pts[..., 0] - d, -pts[..., 1]], axis=-1)


def euler_inner_radius(R: float, d: float) -> float:
    """Inner radius closing triangles: d^2 = R (R - 2 r)."""
    return (R * R - d * d) / (2.0 * R)


def kerawala_inner_radius(R: float, d: float) -> float:
    """Inner radius closing quadrilaterals: 1/(R-d)^2 + 1/(R+d)^2 = 1/r^2."""
    return 1.0 / math.sqrt(1.0 / (R - d) ** 2 + 1.0 / (R + d) ** 2)


def vertices_n3_closed(R: float, d: float, t: float) -> Polygon:
    """Triangle of the Euler pair, inner frame, tangency parameter t.

    P1 P2 is the side touching the inner circle at (r cos t, r sin t).
    """
    if not (R > 0.0 and 0.0 <= d < R):
        raise DomainError("need 0 <= d < R so that r = (R^2 - d^2) / (2R) > 0")
    c, s = math.cos(t), math.sin(t)
    q = R * R + d * d - 2.0 * d * R * c
    radicand = q * (3.0 * R * R - d * d + 2.0 * d * R * c)
    if radicand < 0.0:
        raise DomainError("negative radicand in the triangle parametrization")
    delta = math.sqrt(radicand)
    w = 2.0 * d * R * c + R * R - d * d
    p1 = ((c * w + delta * s) / (2.0 * R) - d, (s * w - delta * c) / (2.0 * R))
    p2 = ((c * w - delta * s) / (2.0 * R) - d, (s * w + delta * c) / (2.0 * R))
    beta = R * R - d * d
    p3 = (-(R * c - d) * beta / q, -R * beta * s / q)
    return Polygon(np.array([p1, p2, p3]), 1)


def _tangent_chord(R: float, d: float, r: float, t: float) -> tuple[np.ndarray, np.ndarray]:
    """Endpoints (entry, exit) on the outer circle of the tangent to the inner circle at angle t,
    traversed counter-clockwise about the inner circle; inner frame."""
    T = np.array([r * math.cos(t), r * math.sin(t)])
    e = np.array([-math.sin(t), math.cos(t)])
    # |T + s e + (d, 0)|^2 = R^2
    half_b = -d * math.sin(t)
    const = r * r + 2.0 * d * r * math.cos(t) + d * d - R * R
    disc = half_b * half_b - const
    if disc < 0.0:
        raise DomainError("tangent line misses the outer circle")
    root = math.sqrt(disc)
    return T + (-half_b - root) * e, T + (-half_b + root) * e


def vertices_n4_closed(R: float, d: float, t: float) -> Polygon:
    """Quadrilateral of the Kerawala pair, inner frame, first side touching the
    inner circle at (r cos t, r sin t).

    Built from explicit tangent-chord intersections: each further side is the
    tangent at the reflection of the previous contact point in the line from
    the inner center through the shared vertex.
    """
    if not (R > 0.0 and 0.0 < d < R):
        raise DomainError("need 0 < d < R")
    r = kerawala_inner_radius(R, d)
    p1, p2 = _tangent_chord(R, d, r, t)
    verts = [p1, p2]
    contact = np.array([r * math.cos(t), r * math.sin(t)])
    outer_c = np.array([-d, 0.0])
    while len(verts) < 4:
        p = verts[-1]
        axis = p / np.hypot(*p)
        contact = 2.0 * (contact @ axis) * axis - contact
        tang = np.array([-contact[1], contact[0]]) / r
        s = -2.0 * tang @ (p - outer_c)
        verts.append(p + s * tang)
    return Polygon(np.array(verts), 1)


def vertices_n4_printed(R: float, d: float, t: float) -> np.ndarray:
    """Literal transcription of the published N = 4 vertex display (inner frame).

    Kept only as a diagnostic: the display is not homogeneous in length and
    only its fourth vertex lies on the outer circle, so it does not describe
    a bicentric quadrilateral. ``vertices_n4_closed`` is the working form.
    """
    r = kerawala_inner_radius(R, d)
    x0, y0 = r * math.cos(t), r * math.sin(t)
    al, be = R * R + d * d, R * R - d * d
    sq = math.sqrt(2.0 * al - 2.0 * be)
    radicand = (
        -2.0 * sq * al * x0 * be**2 - 2.0 * x0**2 * al**3 + 2.0 * x0**2 * al**2 * be
        + al**2 * be**2 + al * be**3 - be**4
    )
    if radicand < 0.0:
        raise DomainError("negative radicand in the printed N = 4 display")
    D = math.sqrt(radicand) / (2.0 * al)
    x1 = D * y0 - (be + 2 * d * x0) * (d * al - be * x0) / (2 * al)
    y1 = -D * x0 + (2 * d * be * x0 + al**2) * y0 / (2 * al)
    x2 = -D * y0 - (be + 2 * d * x0) * (d * be - be * x0) / (2 * al)
    y2 = D * x0 + (2 * d * be * y0 * x0 + al**2 * y0) / (2 * al)
    common = (x0**2 * al * be - 4 * x0**2 * al**2 + 1.5 * be**3 - 2 * be**2 * al) * sq
    den34 = 4 * (sq * al * x0 + be * (be - 2 * al) / 2) ** 2
    x3 = (common + be * (2 * D * al * y0 + 8 * al**2 * x0 - 8 * al * be * x0 + be**2 * x0)) * be / den34
    x4 = -(common + be * (-2 * D * al * y0 + 8 * al**2 * x0 - 8 * al * be * x0 + be**2 * x0)) * be / den34
    den_y = (2 * sq * al * x0 - 2 * al * be + be**2) ** 2
    y3 = al * be * (
        al * (2 * x0 * y0 * al + be * (x0 * y0 - 2 * D)) * sq
        + (4 * D * x0 - 2 * be * y0) * al**2 - 2 * D * al * be * x0 + be**3 * y0
    ) / den_y
    y4 = (
        al * (2 * x0 * y0 * al + be * (x0 * y0 + 2 * D)) * sq
        + (-4 * D * x0 - 2 * be * y0) * al**2 + 2 * D * al * be * x0 + be**3 * y0
    ) * be / den_y
    return np.array([[x1, y1], [x2, y2], [x3, y3], [x4, y4]])


def limiting_points_n3_closed(R: float, d: float) -> tuple[float, float]:
    """Abscissae (first, second) of the limiting points of the Euler pair, inner frame.

    The first is the exterior point, the second the interior one.
    """
    beta = R * R - d * d
    x1 = beta / (8.0 * d * R * R) * (math.sqrt((9 * R * R - d * d) * beta) + 3 * R * R + d * d)
    x2 = x1 - math.sqrt(9 * R * R - d * d) * beta**1.5 / (4 * R * R * d)
    return x1, x2


def limiting_points_n4_closed(R: float, d: float) -> tuple[float, float]:
    """Abscissae (exterior, interior) of the limiting points of the Kerawala pair, inner frame."""
    beta = R * R - d * d
    return beta / (2.0 * d), d * beta / (R * R + d * d)

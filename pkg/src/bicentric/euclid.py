"""Planar primitives plus inversion, pole/polar duality and pedal polygons.

Points are plain ``Point`` tuples so they drop straight into numpy. Polygons
store their vertices as an ``(N, 2)`` float array; the polygon-level
transforms are vectorised over vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import DegenerateError, DomainError, SingularityError

_SINGULAR_REL = 1e-14
_THROUGH_CENTER_REL = 1e-12
_DEGENERATE_REL = 1e-12


class Point(NamedTuple):
    x: float
    y: float


def as_point(p) -> Point:
    x, y = p
    return Point(float(x), float(y))


def distance(p, q) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


@dataclass(frozen=True)
class Line:
    """Line a x + b y + c = 0 with (a, b) a unit normal."""

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        norm = math.hypot(self.a, self.b)
        if norm == 0.0 or not math.isfinite(norm):
            raise DegenerateError("line normal must be a finite non-zero vector")
        if abs(norm - 1.0) > 1e-15:
            object.__setattr__(self, "a", self.a / norm)
            object.__setattr__(self, "b", self.b / norm)
            object.__setattr__(self, "c", self.c / norm)

    @classmethod
    def through(cls, p, q) -> "Line":
        dx, dy = q[0] - p[0], q[1] - p[1]
        length = math.hypot(dx, dy)
        if length == 0.0:
            raise DegenerateError("cannot build a line through coincident points")
        a, b = -dy / length, dx / length
        return cls(a, b, -(a * p[0] + b * p[1]))

    def signed_distance(self, p) -> float:
        return self.a * p[0] + self.b * p[1] + self.c

    def distance(self, p) -> float:
        return abs(self.signed_distance(p))

    def foot(self, p) -> Point:
        s = self.signed_distance(p)
        return Point(p[0] - s * self.a, p[1] - s * self.b)


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", as_point(self.center))
        if not self.radius > 0.0:
            raise DomainError(f"circle radius must be positive, got {self.radius!r}")

    def contains(self, p) -> bool:
        return distance(p, self.center) < self.radius


@dataclass(frozen=True, eq=False)
class Polygon:
    """Ordered vertices (closing edge implied) and the winding number."""

    vertices: np.ndarray
    winding: int = 1

    def __post_init__(self) -> None:
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise DegenerateError(f"polygon needs an (N>=3, 2) vertex array, got shape {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @property
    def N(self) -> int:
        return self.vertices.shape[0]

    def __len__(self) -> int:
        return self.N

    def __getitem__(self, j: int) -> Point:
        return Point(*self.vertices[j % self.N])

    def edges(self) -> np.ndarray:
        """Edge vectors p_{j+1} - p_j."""
        return np.roll(self.vertices, -1, axis=0) - self.vertices

    def diameter(self) -> float:
        v = self.vertices
        diff = v[:, None, :] - v[None, :, :]
        return float(np.sqrt((diff**2).sum(-1)).max())

    def allclose(self, other: "Polygon", atol: float) -> bool:
        return self.N == other.N and float(np.abs(self.vertices - other.vertices).max()) < atol


@dataclass(frozen=True)
class Conic:
    """Axis-aligned ellipse or hyperbola; ``b`` is the imaginary semi-axis for hyperbolas."""

    kind: str
    center: Point
    a: float
    b: float

    def __post_init__(self) -> None:
        if self.kind not in ("ellipse", "hyperbola"):
            raise DomainError(f"unknown conic kind {self.kind!r}")
        if not (self.a > 0.0 and self.b > 0.0):
            raise DomainError("conic semi-axes must be positive")
        object.__setattr__(self, "center", as_point(self.center))

    @property
    def focal_distance(self) -> float:
        if self.kind == "ellipse":
            return math.sqrt(max(self.a**2 - self.b**2, 0.0))
        return math.hypot(self.a, self.b)

    @property
    def foci(self) -> tuple[Point, Point]:
        c = self.focal_distance
        cx, cy = self.center
        return Point(cx - c, cy), Point(cx + c, cy)

    @property
    def eccentricity(self) -> float:
        return self.focal_distance / self.a

    def residual(self, points) -> np.ndarray:
        """Implicit residual X^2 +- Y^2 - 1 in axis units, divided by 1 + X^2 + Y^2.

        The divisor keeps the residual a relative quantity for far-away points
        on hyperbola branches.
        """
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        X = (pts[:, 0] - self.center.x) / self.a
        Y = (pts[:, 1] - self.center.y) / self.b
        sign = 1.0 if self.kind == "ellipse" else -1.0
        return (X**2 + sign * Y**2 - 1.0) / (1.0 + X**2 + Y**2)

    def sample(self, n: int = 256, t_max: float = 2.5) -> list[np.ndarray]:
        """Polyline samples: one closed loop for an ellipse, two branches for a hyperbola."""
        if self.kind == "ellipse":
            t = np.linspace(0.0, 2.0 * math.pi, n)
            return [np.column_stack([self.center.x + self.a * np.cos(t), self.center.y + self.b * np.sin(t)])]
        t = np.linspace(-t_max, t_max, n)
        branches = []
        for s in (1.0, -1.0):
            branches.append(
                np.column_stack([self.center.x + s * self.a * np.cosh(t), self.center.y + self.b * np.sinh(t)])
            )
        return branches


# ---------------------------------------------------------------------------
# inversion and polarity


def invert_point(p, c: Circle) -> Point:
    """Inverse of ``p`` in circle ``c``."""
    ox, oy = c.center
    dx, dy = p[0] - ox, p[1] - oy
    r2 = dx * dx + dy * dy
    if math.sqrt(r2) < _SINGULAR_REL * c.radius:
        raise SingularityError("cannot invert the center of the inversion circle")
    s = c.radius**2 / r2
    return Point(ox + s * dx, oy + s * dy)


def invert_points(pts: np.ndarray, c: Circle) -> np.ndarray:
    """Vectorised ``invert_point`` over an (N, 2) array."""
    rel = np.asarray(pts, dtype=float) - np.asarray(c.center)
    r2 = (rel**2).sum(axis=1)
    if np.any(np.sqrt(r2) < _SINGULAR_REL * c.radius):
        raise SingularityError("a point coincides with the inversion center")
    return np.asarray(c.center) + rel * (c.radius**2 / r2)[:, None]


def invert_circle(circle: Circle, c: Circle) -> Circle:
    """Image of a circle not passing through the inversion center."""
    o = np.asarray(c.center)
    q = np.asarray(circle.center)
    D2 = float(((q - o) ** 2).sum())
    denom = D2 - circle.radius**2
    if abs(denom) < _SINGULAR_REL * max(D2, circle.radius**2):
        raise SingularityError("circle passes through the inversion center; its image is a line")
    center = o + (c.radius**2 / denom) * (q - o)
    return Circle(as_point(center), c.radius**2 * circle.radius / abs(denom))


def polar_line(p, c: Circle) -> Line:
    """Polar of ``p``: the line through its inverse, perpendicular to the ray from the center."""
    ox, oy = c.center
    dx, dy = p[0] - ox, p[1] - oy
    dist = math.hypot(dx, dy)
    if dist < _SINGULAR_REL * c.radius:
        raise SingularityError("the center has no polar line")
    nx, ny = dx / dist, dy / dist
    inv = invert_point(p, c)
    return Line(nx, ny, -(nx * inv[0] + ny * inv[1]))


def pole_of_line(L: Line, c: Circle) -> Point:
    if L.distance(c.center) < _THROUGH_CENTER_REL * c.radius:
        raise SingularityError("line passes through the center; its pole is at infinity")
    return invert_point(L.foot(c.center), c)


def _side_feet(vertices: np.ndarray, p) -> tuple[np.ndarray, np.ndarray]:
    """Feet of perpendiculars from ``p`` to every sideline, plus the distances."""
    v = vertices
    e = np.roll(v, -1, axis=0) - v
    length = np.hypot(e[:, 0], e[:, 1])
    scale = max(float(np.abs(v).max()), 1.0)
    if np.any(length <= _DEGENERATE_REL * scale):
        raise DegenerateError("polygon has a degenerate (zero-length) side")
    t = e / length[:, None]
    rel = np.asarray(p, dtype=float) - v
    along = (rel * t).sum(axis=1)
    feet = v + along[:, None] * t
    dist = np.abs(rel[:, 0] * t[:, 1] - rel[:, 1] * t[:, 0])
    return feet, dist


def pedal_polygon(P: Polygon, p) -> Polygon:
    """Feet of the perpendiculars from ``p`` to sidelines p_j p_{j+1}; vertex j sits on side j.

    A point on a sideline is its own foot, so no position of ``p`` is singular.
    """
    feet, _ = _side_feet(P.vertices, p)
    return Polygon(feet, P.winding)


def polar_polygon(P: Polygon, c: Circle) -> Polygon:
    """Vertex j is the pole of side j of ``P`` with respect to ``c``."""
    feet, dist = _side_feet(P.vertices, c.center)
    if np.any(dist < _THROUGH_CENTER_REL * c.radius):
        raise SingularityError("a side passes through the polarity center")
    return Polygon(invert_points(feet, c), P.winding)


def sideline_distances(P: Polygon, p) -> np.ndarray:
    return _side_feet(P.vertices, p)[1]


# ---------------------------------------------------------------------------
# coaxal pencils


def _limiting_abscissae(R: float, r: float, d: float) -> tuple[float, float]:
    """Limiting points (delta_plus, delta_minus) for the outer circle at the
    origin (radius R) and the other circle at (-d, 0) (radius r)."""
    disc = d**4 - 2.0 * (R**2 + r**2) * d**2 + (R**2 - r**2) ** 2
    if disc <= 0.0:
        raise DomainError("circles intersect or touch; no real limiting points")
    root = math.sqrt(disc)
    base = r**2 - R**2 - d**2
    return (base + root) / (2.0 * d), (base - root) / (2.0 * d)


def limiting_points(c1: Circle, c2: Circle) -> tuple[Point, Point]:
    """The two limiting points of the pencil spanned by two disjoint circles.

    For nested circles the first point returned is the one inside both
    circles and the second lies outside both. For mutually external circles
    the first lies inside ``c1`` and the second inside ``c2``.
    """
    o1 = np.asarray(c1.center)
    o2 = np.asarray(c2.center)
    D = float(np.hypot(*(o2 - o1)))
    scale = max(c1.radius, c2.radius)
    if D < 1e-14 * scale:
        raise DomainError("concentric circles: one limiting point is at infinity")
    # canonical frame: c1 at the origin, c2 at (-D, 0)
    e = (o1 - o2) / D
    x_plus, x_minus = _limiting_abscissae(c1.radius, c2.radius, D)
    pts = [as_point(o1 + x * e) for x in (x_plus, x_minus)]
    in1 = [c1.contains(p) for p in pts]
    in2 = [c2.contains(p) for p in pts]
    nested = D + min(c1.radius, c2.radius) < max(c1.radius, c2.radius)
    if nested:
        first = 0 if (in1[0] and in2[0]) else 1
    else:
        first = 0 if in1[0] else 1
    return pts[first], pts[1 - first]


# ---------------------------------------------------------------------------
# shape diagnostics


def collinearity_residual(P: Polygon) -> float:
    """Smallest singular value of the centred vertex matrix over the diameter."""
    v = P.vertices - P.vertices.mean(axis=0)
    diam = P.diameter()
    if diam == 0.0:
        return 0.0
    # SVD keeps the small singular value accurate to eps * diameter; the
    # square root of a Gram eigenvalue would only reach sqrt(eps)
    return float(np.linalg.svd(v, compute_uv=False)[-1]) / diam


def circle_through(p1, p2, p3) -> Circle:
    """Circumcircle of three points."""
    ax, ay = p1
    bx, by = p2
    cx, cy = p3
    dd = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if dd == 0.0:
        raise DegenerateError("points are collinear")
    a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
    ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / dd
    uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / dd
    return Circle(Point(ux, uy), math.hypot(ax - ux, ay - uy))


def concyclicity_residual(points: Iterable) -> float:
    """Max deviation from the circle through the first three points, relative to its radius."""
    pts = np.asarray(list(points), dtype=float)
    circ = circle_through(pts[0], pts[1], pts[2])
    dev = np.abs(np.hypot(*(pts - np.asarray(circ.center)).T) - circ.radius)
    return float(dev.max() / circ.radius)

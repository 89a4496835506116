"""The four families derived from a bicentric pair, and the circle/conic conversions.

Polarity and inversion share one circle of radius ``rho`` centred on a
limiting point, so the pedal of the bicentric polygon equals the inversion of
its polar polygon vertex by vertex.

  * billiard polygon      polar image wrt l1, inscribed in a confocal ellipse
  * hyperbolic billiard   polar image wrt l2, inscribed in a confocal hyperbola
  * limiting pedals       pedal polygons wrt l1 and l2
  * focus-inversive       a polygon inverted in a circle centred on a focus

The closed-form conic parameters below are written in the inner-at-origin
frame and then carried to the canonical frame with ``swap_frame``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .euclid import (
    Circle,
    Conic,
    Point,
    Polygon,
    as_point,
    distance,
    invert_points,
    pedal_polygon,
    polar_polygon,
)
from .family import BicentricPair, CirclePair, vertices

CONFOCAL_TOL = 1e-10


@dataclass(frozen=True)
class ConfocalPair:
    """Billiard table ``outer``, its ``caustic``, the shared foci and the polarity radius.

    ``foci[0]`` is the focus sitting on the limiting point used to build the pair.
    """

    outer: Conic
    caustic: Conic
    foci: tuple[Point, Point]
    rho: float

    @property
    def c(self) -> float:
        return self.outer.focal_distance


def _radical_terms(pair: CirclePair) -> tuple[float, float, float]:
    """(Delta, kappa, kappa') with kappa = R^2 - d^2 - r^2, kappa' = R^2 + d^2 - r^2."""
    R, r, d = pair.R, pair.r, pair.d
    radicand = (d + R + r) * (R - d + r) * (R + d - r) * (R - d - r)
    if radicand <= 0.0:
        raise DomainError("circles intersect: no confocal polar image")
    return math.sqrt(radicand), R * R - d * d - r * r, R * R + d * d - r * r


def confocal_ellipses_from_bicentric(pair: CirclePair, rho: float = 1.0) -> ConfocalPair:
    """Polar images wrt a circle of radius rho at l1: inner circle -> table, outer -> caustic."""
    if not rho > 0.0:
        raise DomainError("rho must be positive")
    R, r, d = pair.R, pair.r, pair.d
    delta, kappa, kappa_p = _radical_terms(pair)
    rho4 = rho**4
    a2 = rho4 * (2 * d * d * r * r + delta * (kappa + delta)) / (2 * delta**2 * r * r)
    b2 = rho4 * (kappa + delta) / (2 * delta * r * r)
    ap2 = rho4 * (2 * R * R * d * d + delta * (kappa_p + delta)) / (2 * delta**2 * R * R)
    bp2 = rho4 * (kappa_p + delta) / (2 * delta * R * R)
    if d == 0.0:
        center_x, focus_x = 0.0, 0.0
    else:
        l1_inner = (kappa - delta) / (2 * d)
        center_inner = rho * rho * d / delta + l1_inner
        center_x = -center_inner - d
        focus_x = -l1_inner - d
    center = Point(center_x, 0.0)
    outer = Conic("ellipse", center, math.sqrt(a2), math.sqrt(b2))
    caustic = Conic("ellipse", center, math.sqrt(ap2), math.sqrt(bp2))
    f1 = Point(focus_x, 0.0)
    f2 = Point(2 * center_x - focus_x, 0.0)
    return ConfocalPair(outer, caustic, (f1, f2), rho)


def confocal_hyperbolas_from_bicentric(pair: CirclePair, rho: float = 1.0) -> ConfocalPair:
    """Polar images wrt a circle of radius rho at l2: inner circle -> table, outer -> caustic."""
    if not rho > 0.0:
        raise DomainError("rho must be positive")
    if pair.d == 0.0:
        raise DomainError("concentric pair: l2 is at infinity")
    R, r, d = pair.R, pair.r, pair.d
    delta, kappa, kappa_p = _radical_terms(pair)
    rho4 = rho**4
    ah2 = rho4 * (2 * d * d * r * r - delta * (kappa - delta)) / (2 * delta**2 * r * r)
    bh2 = rho4 * (kappa - delta) / (2 * delta * r * r)
    ahp2 = rho4 * (2 * R * R * d * d - delta * (kappa_p - delta)) / (2 * delta**2 * R * R)
    bhp2 = rho4 * (kappa_p - delta) / (2 * delta * R * R)
    l2_inner = (kappa + delta) / (2 * d)
    center_inner = -rho * rho * d / delta + l2_inner
    center_x = -center_inner - d
    focus_x = -l2_inner - d
    center = Point(center_x, 0.0)
    outer = Conic("hyperbola", center, math.sqrt(ah2), math.sqrt(bh2))
    caustic = Conic("hyperbola", center, math.sqrt(ahp2), math.sqrt(bhp2))
    f_near = Point(focus_x, 0.0)
    f_far = Point(2 * center_x - focus_x, 0.0)
    return ConfocalPair(outer, caustic, (f_near, f_far), rho)


def bicentric_from_confocal(
    a: float, b: float, a_prime: float, b_prime: float, rho: float = 1.0
) -> tuple[CirclePair, Point, Point]:
    """Polar image of origin-centred confocal ellipses wrt a circle of radius rho at f1 = (-c, 0).

    Returns the nested circle pair in the canonical frame together with the
    limiting points l1 = (-c, 0) and l2 = (-c + rho^2 / c, 0) in the confocal frame.
    """
    if not min(a, b, a_prime, b_prime, rho) > 0.0:
        raise DomainError("semi-axes and rho must be positive")
    c2 = a * a - b * b
    c2_p = a_prime**2 - b_prime**2
    if abs(c2 - c2_p) > CONFOCAL_TOL * a * a:
        raise DomainError(f"ellipses are not confocal: c^2 = {c2!r} vs {c2_p!r}")
    if c2 <= 0.0:
        raise DomainError("table must be a non-circular ellipse with a > b")
    c = math.sqrt(c2)
    if not a > a_prime > c:
        raise DomainError("need a > a' > c for a nested polar image")
    rho2 = rho * rho
    r = rho2 * a / b**2
    R = rho2 * a_prime / b_prime**2
    d = rho2 * c * (a * a - a_prime**2) / (b * b * b_prime**2)
    return CirclePair(R, r, d), Point(-c, 0.0), Point(-c + rho2 / c, 0.0)


def confocal_frame_circles(a: float, b: float, a_prime: float, b_prime: float, rho: float = 1.0) -> tuple[Circle, Circle]:
    """(inner, outer) circles of ``bicentric_from_confocal`` with their centres in the confocal frame."""
    c = math.sqrt(a * a - b * b)
    rho2 = rho * rho
    inner = Circle(Point(-c - rho2 * c / b**2, 0.0), rho2 * a / b**2)
    outer = Circle(Point(-c - rho2 * c / b_prime**2, 0.0), rho2 * a_prime / b_prime**2)
    return inner, outer


# ---------------------------------------------------------------------------
# derived polygons


def billiard_polygon(pair: BicentricPair, u: float, rho: float = 1.0) -> Polygon:
    return polar_polygon(vertices(pair, u), Circle(pair.l1, rho))


def hyperbolic_billiard_polygon(pair: BicentricPair, u: float, rho: float = 1.0) -> Polygon:
    """Polar image wrt l2. Raises SingularityError when a side passes through l2."""
    return polar_polygon(vertices(pair, u), Circle(pair.l2, rho))


def limiting_pedal(pair: BicentricPair, u: float, which: str = "l1") -> Polygon:
    return pedal_polygon(vertices(pair, u), pair.limiting_point(which))


def focus_inversive(P: Polygon, focus, rho: float = 1.0) -> Polygon:
    """Invert every vertex of ``P`` in the circle of radius rho about ``focus``."""
    return Polygon(invert_points(P.vertices, Circle(as_point(focus), rho)), P.winding)


class PolarImage(NamedTuple):
    circle: Circle
    punctured: bool  # hyperbola: the circle minus the poles of the two asymptotes


def polar_conic_of_conic(conic: Conic, focus, rho: float = 1.0) -> PolarImage:
    """Polar curve of a conic wrt a circle centred on one of its foci.

    The pedal curve of a conic wrt a focus is its auxiliary circle (centre O,
    radius a), and the polar curve is the inverse of that pedal curve.
    """
    f = np.asarray(as_point(focus))
    scale = max(conic.a, conic.b)
    if min(distance(f, g) for g in conic.foci) > 1e-9 * scale:
        raise DomainError("point is not a focus of the conic")
    o = np.asarray(conic.center)
    denom = conic.focal_distance**2 - conic.a**2
    center = f + rho * rho * (o - f) / denom
    circle = Circle(as_point(center), rho * rho * conic.a / abs(denom))
    return PolarImage(circle, conic.kind == "hyperbola")


# ---------------------------------------------------------------------------
# billiard diagnostics


def _conic_normal(conic: Conic, pts: np.ndarray) -> np.ndarray:
    X = pts[:, 0] - conic.center.x
    Y = pts[:, 1] - conic.center.y
    sign = 1.0 if conic.kind == "ellipse" else -1.0
    n = np.column_stack([X / conic.a**2, sign * Y / conic.b**2])
    return n / np.hypot(n[:, 0], n[:, 1])[:, None]


def reflection_residual(P: Polygon, table: Conic) -> float:
    """Largest angle (radians) between each outgoing edge and the mirror image of the incoming one."""
    v = P.vertices
    w_prev = np.roll(v, 1, axis=0) - v
    w_next = np.roll(v, -1, axis=0) - v
    w_prev /= np.hypot(w_prev[:, 0], w_prev[:, 1])[:, None]
    w_next /= np.hypot(w_next[:, 0], w_next[:, 1])[:, None]
    n = _conic_normal(table, v)
    mirrored = 2.0 * (w_prev * n).sum(axis=1)[:, None] * n - w_prev
    cross = mirrored[:, 0] * w_next[:, 1] - mirrored[:, 1] * w_next[:, 0]
    dot = (mirrored * w_next).sum(axis=1)
    return float(np.abs(np.arctan2(cross, dot)).max())


def caustic_tangency_residual(P: Polygon, caustic: Conic) -> float:
    """Max over sidelines of |A^2 a^2 +- B^2 b^2 - C^2| / a^2 for unit normal (A, B), centred offset C."""
    v = P.vertices
    e = np.roll(v, -1, axis=0) - v
    e /= np.hypot(e[:, 0], e[:, 1])[:, None]
    A, B = -e[:, 1], e[:, 0]
    rel = v - np.asarray(caustic.center)
    C = A * rel[:, 0] + B * rel[:, 1]
    sign = 1.0 if caustic.kind == "ellipse" else -1.0
    res = (A * caustic.a) ** 2 + sign * (B * caustic.b) ** 2 - C**2
    return float(np.abs(res).max() / caustic.a**2)

"""Per-polygon measurements and their elliptic-function counterparts."""

from __future__ import annotations

import math

import numpy as np

from .elliptic import jacobi_am, jacobi_sn_cn_dn
from .errors import DegenerateError, DomainError
from .euclid import Conic, Point, Polygon
from .family import BicentricPair

_ON_TABLE_TOL = 1e-8


def side_lengths(P: Polygon) -> np.ndarray:
    """|p_{j+1} - p_j| for j = 0..N-1."""
    e = P.edges()
    return np.hypot(e[:, 0], e[:, 1])


def perimeter(P: Polygon) -> float:
    return float(side_lengths(P).sum())


def signed_perimeter(P: Polygon, table: Conic) -> float:
    """Perimeter where each segment joining the two hyperbola branches counts negatively."""
    if table.kind != "hyperbola":
        raise DomainError("signed perimeter is defined for hyperbolic tables")
    res = np.abs(table.residual(P.vertices)).max()
    if res > _ON_TABLE_TOL:
        raise DomainError(f"vertex off the table (residual {res:.3e})")
    branch = np.sign(P.vertices[:, 0] - table.center.x)
    sign = np.where(branch == np.roll(branch, -1), 1.0, -1.0)
    return float((sign * side_lengths(P)).sum())


def internal_cosines(P: Polygon) -> np.ndarray:
    """cos of the angle at p_j between p_{j-1} - p_j and p_{j+1} - p_j.

    Works for self-intersecting polygons; no simplicity assumption is made.
    """
    v = P.vertices
    back = np.roll(v, 1, axis=0) - v
    fwd = np.roll(v, -1, axis=0) - v
    nb = np.hypot(back[:, 0], back[:, 1])
    nf = np.hypot(fwd[:, 0], fwd[:, 1])
    scale = max(float(np.abs(v).max()), 1e-300)
    if np.any(nb <= 1e-14 * scale) or np.any(nf <= 1e-14 * scale):
        raise DegenerateError("coincident consecutive vertices")
    return (back * fwd).sum(axis=1) / (nb * nf)


def sum_of_cosines(P: Polygon) -> float:
    return float(internal_cosines(P).sum())


def _shifted(pair: BicentricPair, u: float, offsets):
    return jacobi_sn_cn_dn(u + pair.sigma * np.asarray(offsets, dtype=float), pair.k)


def sum_of_cosines_jacobi(pair: BicentricPair, u: float) -> float:
    """-sum_j (cn(u_{j+1}) cn(u_{j-1}) + sn(u_{j+1}) sn(u_{j-1})), u_j = u + j sigma."""
    j = np.arange(pair.N)
    sn_n, cn_n, _ = _shifted(pair, u, j + 1)
    sn_p, cn_p, _ = _shifted(pair, u, j - 1)
    return float(-(cn_n * cn_p + sn_n * sn_p).sum())


def chord_sine(pair: BicentricPair, u: float) -> tuple[np.ndarray, np.ndarray]:
    """(sin(phi_{j+1} - phi_{j-1}), sn(u_{j+1}) cn(u_{j-1}) - sn(u_{j-1}) cn(u_{j+1})) for every j."""
    j = np.arange(pair.N)
    sn_n, cn_n, _ = _shifted(pair, u, j + 1)
    sn_p, cn_p, _ = _shifted(pair, u, j - 1)
    phi_n = jacobi_am(u + pair.sigma * (j + 1.0), pair.k)
    phi_p = jacobi_am(u + pair.sigma * (j - 1.0), pair.k)
    return np.sin(phi_n - phi_p), sn_n * cn_p - sn_p * cn_n


def pedal_sides_closed_form(pair: BicentricPair, u: float, which: str = "l1") -> np.ndarray:
    """Pedal side lengths s_j = r_j rho_j / (2R) from the elliptic-function expressions.

    Entry j is the side between the feet on the two sides meeting at p_j,
    with chord r_j = 2R |sn(u_{j+1}) cn(u_{j-1}) - sn(u_{j-1}) cn(u_{j+1})| and
    spoke rho_j = (2/k) sqrt(-delta R) dn(u_j).
    """
    if which not in ("l1", "l2"):
        raise DomainError(f"which must be 'l1' or 'l2', got {which!r}")
    delta = pair.limiting_abscissae[0 if which == "l1" else 1]
    if -delta * pair.R < 0.0:
        raise DomainError("limiting point abscissa must be negative in the canonical frame")
    _, sine = chord_sine(pair, u)
    chord = 2.0 * pair.R * np.abs(sine)
    _, _, dn = _shifted(pair, u, np.arange(pair.N))
    spoke = (2.0 / pair.k) * math.sqrt(-delta * pair.R) * dn
    return chord * spoke / (2.0 * pair.R)


def pedal_perimeter_jacobi(pair: BicentricPair, u: float, which: str = "l1") -> float:
    return float(pedal_sides_closed_form(pair, u, which).sum())


# ---------------------------------------------------------------------------
# triangle centres


def _incircle_contacts(A, B, C):
    a = math.dist(B, C)
    b = math.dist(C, A)
    c = math.dist(A, B)
    s = 0.5 * (a + b + c)
    if min(s - a, s - b, s - c) <= 1e-14 * s:
        raise DegenerateError("degenerate triangle")
    D = B + (s - b) / a * (C - B)
    E = C + (s - c) / b * (A - C)
    F = A + (s - a) / c * (B - A)
    return D, E, F


def _intersect(p1, p2, q1, q2) -> np.ndarray:
    d1, d2 = p2 - p1, q2 - q1
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if den == 0.0:
        raise DegenerateError("parallel cevians")
    t = ((q1[0] - p1[0]) * d2[1] - (q1[1] - p1[1]) * d2[0]) / den
    return p1 + t * d1


def gergonne_point(T: Polygon) -> Point:
    """Meet of the cevians from each vertex to the opposite incircle contact point."""
    if T.N != 3:
        raise DomainError("Gergonne point needs a triangle")
    A, B, C = T.vertices
    D, E, _ = _incircle_contacts(A, B, C)
    x = _intersect(A, D, B, E)
    return Point(float(x[0]), float(x[1]))


def gergonne_concurrency_residual(T: Polygon) -> float:
    """Distance from the A- and B-cevian meet to the C-cevian, over the perimeter."""
    A, B, C = T.vertices
    _, _, F = _incircle_contacts(A, B, C)
    x = np.asarray(gergonne_point(T))
    d = F - C
    dist = abs(d[0] * (x[1] - C[1]) - d[1] * (x[0] - C[0])) / math.hypot(*d)
    return dist / perimeter(T)

"""Closed-form invariants of the N = 3 and N = 4 families.

Two sets of variables appear. (a, b) are the semi-axes of the billiard table
obtained as the polar image of the inner circle about l1 with radius rho,
and c^2 = a^2 - b^2. (R, d) describe the circle pair directly. These formulas
are cross-checks only; the measured geometry in ``lab`` is authoritative.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .errors import DomainError


class N3Invariants(NamedTuple):
    L_dagger: float  # perimeter of the focus-inversive polygon = perimeter of the l1-pedal
    sum_cos: float  # sum of cosines shared by the bicentric polygon and both pedals
    X7_1: float  # l1-pedal Gergonne point, signed offset from the table centre toward l1
    note: str = ""


class N4Invariants(NamedTuple):
    L_dagger: float  # perimeter of the focus-inversive polygon = perimeter of the l1-pedal
    L_minus: float  # perimeter of the l2-pedal
    sum_cos_bicentric: float
    sum_cos_l2_pedal: float


def _check_axes(a: float, b: float, rho: float) -> None:
    if not (a > 0.0 and b > 0.0 and rho > 0.0):
        raise DomainError("a, b and rho must be positive")
    if a < b:
        raise DomainError(f"need a >= b, got a={a!r}, b={b!r}")


def _delta(a: float, b: float) -> float:
    return math.sqrt(a**4 - a * a * b * b + b**4)


def n3_closed_invariants(a: float, b: float, rho: float = 1.0) -> N3Invariants:
    """N = 3 invariants in terms of the billiard table.

    A circular table (a == b) has c = 0, so the cosine-sum and Gergonne
    formulas are 0/0; NaN is returned for them together with a note.
    """
    _check_axes(a, b, rho)
    delta = _delta(a, b)
    a2, b2 = a * a, b * b
    radicand = (8 * a2 * a2 + 4 * a2 * b2 + 2 * b2 * b2) * delta + 8 * a2**3 + 3 * a2 * b2 * b2 + 2 * b2**3
    L = rho * rho * math.sqrt(radicand) / (a2 * b2)
    c2 = a2 - b2
    if c2 <= 0.0:
        return N3Invariants(L, math.nan, math.nan, "circular table: c = 0, concentric limit")
    c = math.sqrt(c2)
    sum_cos = delta * (a2 + c2 - delta) / (a2 * c2)
    x7 = c * (1.0 - rho * rho / (delta + c2))
    return N3Invariants(L, sum_cos, x7)


def n4_closed_invariants(a: float, b: float, rho: float = 1.0) -> N4Invariants:
    """N = 4 invariants in terms of the billiard table (a > b)."""
    _check_axes(a, b, rho)
    if a == b:
        raise DomainError("circular table: the l2-pedal perimeter needs c > 0")
    c = math.sqrt(a * a - b * b)
    rho2 = rho * rho
    L_dagger = 4.0 * rho2 * math.sqrt(a * a + b * b) / (b * b)
    L_minus = 4.0 * rho2 * a * a / (b * b * c)
    return N4Invariants(L_dagger, L_minus, 0.0, 4.0)


def n4_billiard_perimeter(a: float, b: float) -> float:
    """Perimeter of the billiard 4-periodics in an (a, b) table: 4 sqrt(a^2 + b^2)."""
    _check_axes(a, b, 1.0)
    return 4.0 * math.sqrt(a * a + b * b)


# ---------------------------------------------------------------------------
# (R, d) forms; the N = 3 pair has r = (R^2 - d^2) / (2R)


def _check_rd(R: float, d: float) -> None:
    if not 0.0 < d < R:
        raise DomainError(f"need 0 < d < R, got R={R!r}, d={d!r}")


def n3_sum_cos_bicentric(R: float, d: float) -> float:
    """1 + r/R for the Euler pair."""
    _check_rd(R, d)
    return (3 * R * R - d * d) / (2 * R * R)


def _n3_radical(R: float, d: float, sign: float) -> float:
    beta = R * R - d * d
    return sign * beta**1.5 * math.sqrt(9 * R * R - d * d) + 3 * R**4 + 6 * R * R * d * d - d**4


def n3_pedal_perimeters(R: float, d: float) -> tuple[float, float]:
    """(l1-pedal, l2-pedal) perimeters of the N = 3 family.

    Pedal polygons do not involve a polarity circle, so no rho factor appears.
    """
    _check_rd(R, d)
    pre = (9 * R * R - d * d) * (R * R - d * d) * math.sqrt(2.0) / (16 * R**4 * d)
    return pre * math.sqrt(_n3_radical(R, d, -1.0)), pre * math.sqrt(_n3_radical(R, d, 1.0))


def n3_gergonne_l2(R: float, d: float) -> float:
    """Abscissa of the l2-pedal Gergonne point, inner circle at the origin."""
    _check_rd(R, d)
    return (R * R - d * d) * _n3_radical(R, d, 1.0) / (16 * R**4 * d)


def n3_pair_from_table(a: float, b: float, rho: float = 1.0) -> tuple[float, float]:
    """(R, d) of the N = 3 circle pair whose l1 polar image is the (a, b) table."""
    _check_axes(a, b, rho)
    delta = _delta(a, b)
    a2, b2 = a * a, b * b
    c = math.sqrt(a2 - b2)
    R = (2 * a2 * a2 - 2 * a2 * b2 + b2 * b2 + (2 * a2 - b2) * delta) * a * rho * rho / b**6
    d = (2 * a2 - b2 + 2 * delta) * c * rho * rho * a2 / b**6
    return R, d

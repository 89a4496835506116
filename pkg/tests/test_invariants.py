import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bicentric.closed_forms import (
    n3_closed_invariants,
    n3_gergonne_l2,
    n3_pair_from_table,
    n3_pedal_perimeters,
    n3_sum_cos_bicentric,
    n4_billiard_perimeter,
    n4_closed_invariants,
)
from bicentric.derived import confocal_ellipses_from_bicentric, limiting_pedal
from bicentric.errors import DegenerateError, DomainError
from bicentric.euclid import Conic, Polygon
from bicentric.family import BicentricPair, euler_inner_radius, poncelet_solve, swap_frame, vertices
from bicentric.invariants import (
    chord_sine,
    gergonne_concurrency_residual,
    gergonne_point,
    internal_cosines,
    pedal_perimeter_jacobi,
    pedal_sides_closed_form,
    perimeter,
    side_lengths,
    signed_perimeter,
    sum_of_cosines,
    sum_of_cosines_jacobi,
)

EQUILATERAL = Polygon([[0, 0], [1, 0], [0.5, math.sqrt(3) / 2]])
SQUARE = Polygon([[0, 0], [1, 0], [1, 1], [0, 1]])


def test_perimeter_examples():
    assert perimeter(SQUARE) == 4.0
    assert perimeter(Polygon([[0, 0], [3, 0], [0, 4]])) == 12.0


def test_sum_of_cosines_examples():
    assert sum_of_cosines(EQUILATERAL) == pytest.approx(1.5, abs=1e-15)
    assert sum_of_cosines(SQUARE) == pytest.approx(0.0, abs=1e-15)
    ref = poncelet_solve(2.0, 1.0, 3, 1)
    assert sum_of_cosines(vertices(ref, 0.3)) == pytest.approx(11 / 8, abs=1e-12)
    with pytest.raises(DegenerateError):
        internal_cosines(Polygon([[0, 0], [0, 0], [1, 1]]))


def test_signed_perimeter_rules():
    H = Conic("hyperbola", (0.0, 0.0), 1.0, 1.0)
    t = np.array([-0.5, 0.2, 1.0])
    one_branch = Polygon(np.column_stack([np.cosh(t), np.sinh(t)]))
    assert signed_perimeter(one_branch, H) == pytest.approx(perimeter(one_branch))
    # two vertices on the right branch, one on the left
    P = Polygon([[math.cosh(0.3), math.sinh(0.3)], [math.cosh(-0.4), math.sinh(-0.4)], [-1.0, 0.0]])
    sides = side_lengths(P)
    assert signed_perimeter(P, H) == pytest.approx(sides[0] - sides[1] - sides[2])
    assert signed_perimeter(P, H) < perimeter(P)
    with pytest.raises(DomainError):
        signed_perimeter(SQUARE, H)
    with pytest.raises(DomainError):
        signed_perimeter(P, Conic("ellipse", (0, 0), 2, 1))


families = st.sampled_from([(3, 1), (4, 1), (5, 1), (5, 2), (6, 1), (7, 2), (8, 1)])


@given(families, st.sampled_from([0.3, 0.7, 1.0]), st.floats(-5, 5))
def test_jacobi_cosine_sum_matches_geometry(nt, d, u):
    pair = poncelet_solve(2.0, d, *nt)
    assert abs(sum_of_cosines_jacobi(pair, u) - sum_of_cosines(vertices(pair, u))) < 1e-10


def test_jacobi_cosine_sum_reference_values():
    p3 = poncelet_solve(2.0, 1.0, 3, 1)
    p4 = poncelet_solve(2.0, 1.0, 4, 1)
    for u in (0.0, 0.7, 2.2):
        assert sum_of_cosines_jacobi(p3, u) == pytest.approx(1.375, abs=1e-10)
        assert abs(sum_of_cosines_jacobi(p4, u)) < 1e-10


@given(families, st.floats(-5, 5), st.sampled_from(["l1", "l2"]))
def test_jacobi_sides_match_pedal(nt, u, which):
    pair = poncelet_solve(2.0, 0.7, *nt)
    Q = limiting_pedal(pair, u, which)
    geo = np.roll(side_lengths(Q), 1)
    assert np.abs(geo - pedal_sides_closed_form(pair, u, which)).max() < 1e-9


@given(families, st.floats(-5, 5))
def test_chord_sine_identity(nt, u):
    pair = poncelet_solve(2.0, 0.7, *nt)
    a, b = chord_sine(pair, u)
    assert np.abs(a - b).max() < 1e-12


def test_pedal_perimeter_constant_in_u():
    pair = poncelet_solve(2.0, 0.7, 5, 1)
    for which in ("l1", "l2"):
        vals = [pedal_perimeter_jacobi(pair, u, which) for u in np.linspace(0, 2 * pair.K, 64)]
        assert (max(vals) - min(vals)) / np.mean(vals) < 1e-9


def test_pedal_sides_bad_which():
    with pytest.raises(DomainError):
        pedal_sides_closed_form(poncelet_solve(2.0, 1.0, 3, 1), 0.0, "l3")


# --- Gergonne ----------------------------------------------------------------


def test_gergonne_equilateral_is_centroid():
    g = gergonne_point(EQUILATERAL)
    assert g == pytest.approx(tuple(EQUILATERAL.vertices.mean(axis=0)), abs=1e-15)


@given(st.lists(st.tuples(st.floats(-3, 3), st.floats(-3, 3)), min_size=3, max_size=3))
def test_gergonne_barycentric_oracle(pts):
    T = Polygon(pts)
    A, B, C = T.vertices
    a, b, c = np.linalg.norm(B - C), np.linalg.norm(C - A), np.linalg.norm(A - B)
    s = 0.5 * (a + b + c)
    from hypothesis import assume

    assume(min(s - a, s - b, s - c) > 1e-2 * s and s > 0.1)
    area = abs((B - A)[0] * (C - A)[1] - (B - A)[1] * (C - A)[0]) / 2
    assume(area > 1e-2 * s * s)
    w = np.array([1 / (s - a), 1 / (s - b), 1 / (s - c)])
    ref = (w[:, None] * T.vertices).sum(axis=0) / w.sum()
    assert np.allclose(gergonne_point(T), ref, atol=1e-10 * s)
    assert gergonne_concurrency_residual(T) < 1e-12


def test_gergonne_needs_triangle():
    with pytest.raises(DomainError):
        gergonne_point(SQUARE)
    with pytest.raises(DegenerateError):
        gergonne_point(Polygon([[0, 0], [1, 1], [2, 2]]))


def _table_2_1_family():
    R, d = n3_pair_from_table(2.0, 1.0)
    return BicentricPair(R, euler_inner_radius(R, d), d, 3, 1)


def test_gergonne_x7_1_for_table_2_1():
    pair = _table_2_1_family()
    E = confocal_ellipses_from_bicentric(pair)
    assert (E.outer.a, E.outer.b) == pytest.approx((2.0, 1.0), rel=1e-12)
    mpmath.mp.dps = 40
    a, b = mpmath.mpf(2), mpmath.mpf(1)
    c = mpmath.sqrt(a * a - b * b)
    dl = mpmath.sqrt(a**4 - a * a * b * b + b**4)
    oracle = float(c * (1 - 1 / (dl + c * c)))
    o = np.asarray(E.outer.center)
    axis = (np.asarray(pair.l1) - o) / E.c
    for u in np.linspace(0, 2 * pair.K, 64, endpoint=False):
        g = np.asarray(gergonne_point(limiting_pedal(pair, u, "l1")))
        assert float((g - o) @ axis) == pytest.approx(oracle, abs=1e-8)
        assert abs(float((g - o) @ np.array([-axis[1], axis[0]]))) < 1e-8


# --- closed forms ------------------------------------------------------------


def test_n3_closed_against_mpmath():
    mpmath.mp.dps = 40
    a, b, rho = mpmath.mpf(2), mpmath.mpf(1), mpmath.mpf(1)
    dl = mpmath.sqrt(a**4 - a**2 * b**2 + b**4)
    c2 = a * a - b * b
    L = rho**2 * mpmath.sqrt((8 * a**4 + 4 * a**2 * b**2 + 2 * b**4) * dl + 8 * a**6 + 3 * a**2 * b**4 + 2 * b**6) / (a**2 * b**2)
    S = dl * (a * a + c2 - dl) / (a * a * c2)
    got = n3_closed_invariants(2.0, 1.0, 1.0)
    assert got.L_dagger == pytest.approx(float(L), rel=1e-14)
    assert got.sum_cos == pytest.approx(float(S), rel=1e-14)


def test_n3_closed_circular_table():
    got = n3_closed_invariants(1.5, 1.5)
    assert math.isnan(got.sum_cos) and math.isnan(got.X7_1)
    assert "circular" in got.note
    with pytest.raises(DomainError):
        n3_closed_invariants(1.0, 2.0)


@pytest.mark.parametrize("d", [0.3, 1.0, 1.5])
@pytest.mark.parametrize("rho", [1.0, 0.6])
def test_n3_closed_match_measurement(d, rho):
    pair = poncelet_solve(2.0, d, 3, 1)
    E = confocal_ellipses_from_bicentric(pair, rho)
    got = n3_closed_invariants(E.outer.a, E.outer.b, rho)
    u = 0.41
    assert perimeter(limiting_pedal(pair, u, "l1")) == pytest.approx(got.L_dagger, rel=1e-8)
    for fam in ("l1", "l2"):
        assert sum_of_cosines(limiting_pedal(pair, u, fam)) == pytest.approx(got.sum_cos, rel=1e-8)
    assert got.sum_cos == pytest.approx(n3_sum_cos_bicentric(2.0, d), rel=1e-12)
    assert n3_pair_from_table(E.outer.a, E.outer.b, rho) == pytest.approx((2.0, d), rel=1e-10)


@pytest.mark.parametrize("d", [0.3, 1.0, 1.5])
def test_n3_rd_forms(d):
    pair = poncelet_solve(2.0, d, 3, 1)
    l1, l2 = n3_pedal_perimeters(2.0, d)
    assert perimeter(limiting_pedal(pair, 0.2, "l1")) == pytest.approx(l1, rel=1e-10)
    assert perimeter(limiting_pedal(pair, 0.2, "l2")) == pytest.approx(l2, rel=1e-10)
    g = gergonne_point(limiting_pedal(pair, 0.2, "l2"))
    assert swap_frame(np.asarray(g), d)[0] == pytest.approx(n3_gergonne_l2(2.0, d), rel=1e-10)


def test_n4_closed_examples():
    got = n4_closed_invariants(2.0, 1.0)
    assert got.L_dagger == pytest.approx(4 * math.sqrt(5), rel=1e-15)
    assert got.L_dagger == pytest.approx(8.944272, abs=1e-6)
    assert got.L_minus == pytest.approx(16 / math.sqrt(3), rel=1e-15)
    assert got.L_minus == pytest.approx(9.237604, abs=1e-6)
    assert got.sum_cos_bicentric == 0.0 and got.sum_cos_l2_pedal == 4.0
    assert n4_billiard_perimeter(2.0, 1.0) == pytest.approx(4 * math.sqrt(5))
    with pytest.raises(DomainError):
        n4_closed_invariants(1.0, 1.0)


@pytest.mark.parametrize("d", [0.3, 1.0])
def test_n4_closed_match_measurement(d):
    pair = poncelet_solve(2.0, d, 4, 1)
    E = confocal_ellipses_from_bicentric(pair)
    got = n4_closed_invariants(E.outer.a, E.outer.b)
    for u in (0.1, 0.9):
        assert perimeter(limiting_pedal(pair, u, "l1")) == pytest.approx(got.L_dagger, rel=1e-9)
        assert perimeter(limiting_pedal(pair, u, "l2")) == pytest.approx(got.L_minus, rel=1e-9)
        assert sum_of_cosines(limiting_pedal(pair, u, "l2")) == pytest.approx(4.0, abs=1e-9)

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bicentric.derived import (
    bicentric_from_confocal,
    billiard_polygon,
    caustic_tangency_residual,
    confocal_ellipses_from_bicentric,
    confocal_frame_circles,
    confocal_hyperbolas_from_bicentric,
    focus_inversive,
    hyperbolic_billiard_polygon,
    limiting_pedal,
    polar_conic_of_conic,
    reflection_residual,
)
from bicentric.errors import DomainError, SingularityError
from bicentric.euclid import Circle, Conic, Point, collinearity_residual, concyclicity_residual, limiting_points, polar_polygon
from bicentric.family import CirclePair, poncelet_solve, vertices
from bicentric.invariants import perimeter, side_lengths

REF3 = poncelet_solve(2.0, 1.0, 3, 1)
REF4 = poncelet_solve(2.0, 1.0, 4, 1)


def _delta(pair):
    R, r, d = pair.R, pair.r, pair.d
    return math.sqrt((d + R + r) * (R - d + r) * (R + d - r) * (R - d - r))


@pytest.mark.parametrize("rho", [1.0, 0.6, 2.5])
def test_focal_distances(rho):
    E = confocal_ellipses_from_bicentric(REF3, rho)
    H = confocal_hyperbolas_from_bicentric(REF3, rho)
    c2 = rho**4 * REF3.d**2 / _delta(REF3) ** 2
    assert E.outer.a**2 - E.outer.b**2 == pytest.approx(c2, abs=1e-12)
    assert E.caustic.a**2 - E.caustic.b**2 == pytest.approx(c2, abs=1e-12)
    assert H.outer.a**2 + H.outer.b**2 == pytest.approx(c2, abs=1e-12)
    assert H.caustic.a**2 + H.caustic.b**2 == pytest.approx(c2, abs=1e-12)
    assert abs(E.c - H.c) < 1e-12


def test_foci_are_limiting_points():
    E = confocal_ellipses_from_bicentric(REF3)
    H = confocal_hyperbolas_from_bicentric(REF3)
    assert math.dist(E.foci[0], REF3.l1) < 1e-10
    assert math.dist(H.foci[0], REF3.l2) < 1e-10


def test_concentric_limit_gives_circles():
    E = confocal_ellipses_from_bicentric(CirclePair(2.0, 0.75, 0.0))
    assert E.outer.a == pytest.approx(E.outer.b, rel=1e-14)
    assert E.caustic.a == pytest.approx(E.caustic.b, rel=1e-14)
    assert E.outer.a == pytest.approx(1 / 0.75) and E.caustic.a == pytest.approx(0.5)
    with pytest.raises(DomainError):
        confocal_hyperbolas_from_bicentric(CirclePair(2.0, 0.75, 0.0))


@pytest.mark.parametrize("pair", [REF3, REF4, poncelet_solve(2.0, 0.7, 5, 2)], ids=["N3", "N4", "N5t2"])
@pytest.mark.parametrize("rho", [1.0, 0.7])
def test_polar_images_lie_on_conics(pair, rho):
    E = confocal_ellipses_from_bicentric(pair, rho)
    H = confocal_hyperbolas_from_bicentric(pair, rho)
    for u in np.linspace(0.01, 2 * pair.K, 16, endpoint=False):
        B = billiard_polygon(pair, u, rho)
        assert np.abs(E.outer.residual(B.vertices)).max() < 1e-9
        assert caustic_tangency_residual(B, E.caustic) < 1e-9
        assert reflection_residual(B, E.outer) < 1e-8
        try:
            Hp = hyperbolic_billiard_polygon(pair, u, rho)
        except SingularityError:
            continue
        assert np.abs(H.outer.residual(Hp.vertices)).max() < 1e-9


def test_polar_polygon_through_l1_circle():
    B = polar_polygon(vertices(REF3, 0.4), Circle(REF3.l1, 1.0))
    E = confocal_ellipses_from_bicentric(REF3)
    assert np.abs(E.outer.residual(B.vertices)).max() < 1e-10


def test_bicentric_from_confocal_example():
    pair, l1, l2 = bicentric_from_confocal(2.0, 1.0, 1.9, math.sqrt(0.61), 1.0)
    assert pair.r == pytest.approx(2.0, rel=1e-12)
    assert pair.R == pytest.approx(1.9 / 0.61, rel=1e-12)
    assert pair.d == pytest.approx(math.sqrt(3) * 0.39 / 0.61, rel=1e-12)
    assert pair.R - pair.d > pair.r
    assert l1 == pytest.approx((-math.sqrt(3), 0.0))
    assert l2 == pytest.approx((-math.sqrt(3) + 1 / math.sqrt(3), 0.0))


def test_bicentric_from_confocal_errors():
    with pytest.raises(DomainError):
        bicentric_from_confocal(2.0, 1.0, 1.9, 0.5)
    with pytest.raises(DomainError):
        bicentric_from_confocal(2.0, 1.0, 2.5, math.sqrt(2.5**2 - 3))


@given(st.floats(1.1, 4.0), st.floats(0.05, 0.95), st.floats(0.3, 2.0))
def test_confocal_round_trip(a, frac, rho):
    b = 1.0
    c = math.sqrt(a * a - b * b)
    a_p = c + frac * (a - c)
    b_p = math.sqrt(a_p**2 - c * c)
    pair, l1, l2 = bicentric_from_confocal(a, b, a_p, b_p, rho)
    E = confocal_ellipses_from_bicentric(pair, rho)
    assert (E.outer.a, E.outer.b, E.caustic.a, E.caustic.b) == pytest.approx((a, b, a_p, b_p), rel=1e-10)
    # limiting points of the confocal-frame circles are the returned l1, l2
    inner, outer = confocal_frame_circles(a, b, a_p, b_p, rho)
    lp_in, lp_out = limiting_points(outer, inner)
    assert math.dist(lp_in, l1) < 1e-9 * max(1, abs(l1.x))
    assert math.dist(lp_out, l2) < 1e-9 * max(1, abs(l2.x))


@pytest.mark.parametrize("N,tau,d", [(3, 1, 1.0), (5, 2, 0.5), (6, 1, 0.3)])
def test_bicentric_round_trip(N, tau, d):
    pair = poncelet_solve(2.0, d, N, tau)
    E = confocal_ellipses_from_bicentric(pair, 0.8)
    back, _, _ = bicentric_from_confocal(E.outer.a, E.outer.b, E.caustic.a, E.caustic.b, 0.8)
    assert (back.R, back.r, back.d) == pytest.approx((pair.R, pair.r, pair.d), abs=1e-10)


def test_billiard_perimeter_constant():
    vals = [perimeter(billiard_polygon(REF3, u)) for u in np.linspace(0, 2 * REF3.K, 256, endpoint=False)]
    assert (max(vals) - min(vals)) / np.mean(vals) < 1e-9


def test_n4_billiard_perimeter_table_2_1():
    s = math.sqrt(5.0)
    circles, _, _ = bicentric_from_confocal(2.0, 1.0, 4 / s, 1 / s)
    from bicentric.family import BicentricPair

    pair = BicentricPair(circles.R, circles.r, circles.d, 4, 1)
    for u in (0.0, 0.4, 1.3):
        assert perimeter(billiard_polygon(pair, u)) == pytest.approx(4 * math.sqrt(5), abs=1e-9)


def test_n4_billiard_perimeter_general_table():
    # for a general table the 4-periodic perimeter is 4 sqrt(a^2 + b^2), no 1/b^2 factor
    E = confocal_ellipses_from_bicentric(REF4)
    a, b = E.outer.a, E.outer.b
    assert abs(b - 1.0) > 0.1
    P = perimeter(billiard_polygon(REF4, 0.77))
    assert P == pytest.approx(4 * math.hypot(a, b), rel=1e-10)
    assert P != pytest.approx(4 * math.hypot(a, b) / b**2, rel=1e-3)


def test_focus_inversive_equals_l1_pedal():
    for pair in (REF3, REF4, poncelet_solve(2.0, 0.7, 7, 3)):
        for u in np.linspace(0.05, 2 * pair.K, 9):
            for rho in (1.0, 0.45):
                inv = focus_inversive(billiard_polygon(pair, u, rho), pair.l1, rho)
                ped = limiting_pedal(pair, u, "l1")
                assert np.abs(inv.vertices - ped.vertices).max() < 1e-9


def test_focus_inversive_twice_is_identity():
    P = vertices(REF3, 0.2)
    back = focus_inversive(focus_inversive(P, (0.1, 0.2), 0.9), (0.1, 0.2), 0.9)
    assert np.abs(back.vertices - P.vertices).max() < 1e-12


def test_n4_l2_pedal_collinear_and_hyperbolic_concyclic():
    H = confocal_hyperbolas_from_bicentric(REF4)
    for u in np.linspace(0.05, 2 * REF4.K, 11):
        assert collinearity_residual(limiting_pedal(REF4, u, "l2")) < 1e-9
        Hp = hyperbolic_billiard_polygon(REF4, u)
        assert concyclicity_residual(list(Hp.vertices) + list(H.outer.foci)) < 1e-8


def test_pedal_sides_spoke_reference():
    from bicentric.invariants import pedal_sides_closed_form

    Q = limiting_pedal(REF3, 0.0, "l1")
    geo = side_lengths(Q)
    closed = pedal_sides_closed_form(REF3, 0.0, "l1")
    assert np.allclose(np.roll(geo, 1), closed, atol=1e-10)


# --- polar image of a conic about a focus ----------------------------------------


def test_polar_conic_example():
    E = Conic("ellipse", (-math.sqrt(3), 0.0), 2.0, 1.0)
    img = polar_conic_of_conic(E, (0.0, 0.0), 1.0)
    assert img.circle.center == pytest.approx((math.sqrt(3), 0.0), abs=1e-14)
    assert img.circle.radius == pytest.approx(2.0, rel=1e-14)
    assert not img.punctured


def test_polar_conic_matches_pointwise_polar():
    E = Conic("ellipse", (0.4, 0.0), 3.0, 2.0)
    f = E.foci[1]
    img = polar_conic_of_conic(E, f, 0.7)
    t = np.linspace(0, 2 * np.pi, 40, endpoint=False)
    pts = np.column_stack([0.4 + 3 * np.cos(t), 2 * np.sin(t)])
    # sides of a fine inscribed polygon approximate tangents; use exact tangents instead
    tang = np.column_stack([-3 * np.sin(t), 2 * np.cos(t)])
    from bicentric.euclid import Line, pole_of_line

    c = Circle(f, 0.7)
    for p, v in zip(pts, tang):
        q = pole_of_line(Line.through(p, p + v), c)
        assert math.dist(q, img.circle.center) == pytest.approx(img.circle.radius, rel=1e-12)


def test_polar_conic_circle_and_hyperbola():
    C = Conic("ellipse", (1.0, 2.0), 1.5, 1.5)
    img = polar_conic_of_conic(C, (1.0, 2.0), 1.2)
    assert img.circle.center == pytest.approx((1.0, 2.0)) and img.circle.radius == pytest.approx(1.44 / 1.5)
    H = Conic("hyperbola", (0.0, 0.0), 1.0, 2.0)
    img = polar_conic_of_conic(H, H.foci[0], 1.0)
    assert img.punctured
    with pytest.raises(DomainError):
        polar_conic_of_conic(H, (0.3, 0.0))


def test_focus_is_limiting_point_of_polar_images():
    a, b, a_p = 2.0, 1.0, 1.85
    c = math.sqrt(3)
    E = Conic("ellipse", (0, 0), a, b)
    Ep = Conic("ellipse", (0, 0), a_p, math.sqrt(a_p**2 - c * c))
    f = Point(-c, 0.0)
    c1 = polar_conic_of_conic(E, f).circle
    c2 = polar_conic_of_conic(Ep, f).circle
    assert math.dist(limiting_points(c1, c2)[0], f) < 1e-9

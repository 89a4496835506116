"""Poncelet bicentric polygon families, their derived polygon families and invariant checks."""

from .closed_forms import n3_closed_invariants, n4_closed_invariants
from .derived import (
    ConfocalPair,
    bicentric_from_confocal,
    billiard_polygon,
    confocal_ellipses_from_bicentric,
    confocal_hyperbolas_from_bicentric,
    focus_inversive,
    hyperbolic_billiard_polygon,
    limiting_pedal,
    polar_conic_of_conic,
)
from .elliptic import EllipticModulus, complete_K, jacobi_am, jacobi_sn_cn_dn
from .errors import BicentricError, DegenerateError, DomainError, SingularityError, SolverError
from .euclid import (
    Circle,
    Conic,
    Line,
    Point,
    Polygon,
    collinearity_residual,
    invert_point,
    limiting_points,
    pedal_polygon,
    polar_line,
    polar_polygon,
    pole_of_line,
)
from .family import (
    BicentricPair,
    CirclePair,
    modulus,
    poncelet_solve,
    tangency_residual,
    tangent_step,
    vertices,
    vertices_n3_closed,
    vertices_n4_closed,
)
from .invariants import (
    gergonne_point,
    pedal_sides_closed_form,
    perimeter,
    signed_perimeter,
    sum_of_cosines,
    sum_of_cosines_jacobi,
)
from .lab import InvariantVerdict, SweepReport, conjecture1_harness, sweep, verify_all

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

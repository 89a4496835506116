"""Exception hierarchy shared by the numeric and geometric layers."""


class BicentricError(Exception):
    """Base class for every error raised by this package."""


class DomainError(BicentricError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class SingularityError(BicentricError, ArithmeticError):
    """A construction hits a point or line at infinity (e.g. inverting the center)."""


class DegenerateError(BicentricError, ValueError):
    """Input geometry is degenerate (coincident vertices, zero-length sides)."""


class SolverError(BicentricError, RuntimeError):
    """A bracketed root search could not find or certify a root."""

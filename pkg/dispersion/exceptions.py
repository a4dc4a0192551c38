# ---------------------------------------------------------------------------- #
#                                DispersionError                               #
# ---------------------------------------------------------------------------- #


class DispersionError(Exception):
    """Base class for every error raised by the dispersion app."""


class DomainError(DispersionError, ValueError):
    """Argument outside the physical domain (nonpositive mass or distance, ...)."""


class SingularLocusError(DispersionError):
    """
    Request lands on a light-cone locus where the quantity is not finite.

    Raised by the field oracle when a kernel argument or a finite-difference
    stencil point hits (x+x')^2 = (t-t')^2, and by the CLI when a singular
    point is requested without ``--allow-singular``.
    """


class QuadratureError(DispersionError):
    """
    Adaptive quadrature did not reach the requested tolerance.

    Attributes:
        value (float): Best estimate of the integral.
        error (float): Achieved error estimate.
        subdivisions (int): Number of panels used.
    """

    def __init__(self, message, value, error, subdivisions):
        super().__init__(message)
        self.value = value
        self.error = error
        self.subdivisions = subdivisions


class SeriesNonConvergence(DispersionError):
    """Hypergeometric series ran out of its term budget; ``result`` holds the partial sum."""

    def __init__(self, message, result):
        super().__init__(message)
        self.result = result


class PochhammerOverflow(DispersionError, OverflowError):
    """Rising factorial left the double-precision range."""


class BoundaryContactWarning(UserWarning):
    """Smearing window reaches the boundary at x = 0, where the model breaks down."""

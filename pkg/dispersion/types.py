"""
Value types shared by the dispersion modules.

All quantities are in natural units (hbar = c = 1), so lengths and times are
measured in the same unit and every dispersion is a pure number times a
power of length.
"""

# python imports
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

# in app imports
from dispersion.conf import dispersion_settings
from dispersion.exceptions import DomainError


def check_measuring_time(tau):
    """Return ``tau`` as a float, rejecting negative or non-finite values."""
    tau = float(tau)
    if not math.isfinite(tau) or tau < 0.0:
        raise DomainError(f"Measuring time must be finite and >= 0, got {tau!r}.")
    return tau


# ---------------------------------------------------------------------------- #
#                                ParticleConfig                                #
# ---------------------------------------------------------------------------- #


@dataclass(frozen=True)
class ParticleConfig:
    """
    Scalar test particle held at a fixed distance from the boundary.

    Attributes:
        g (float): Scalar coupling. Zero is allowed and switches every
            dispersion off.
        m (float): Mass, strictly positive.
        x (float): Distance from the Dirichlet point at x = 0, strictly positive.
    """
    g: float
    m: float
    x: float

    def __post_init__(self):
        for name in ('g', 'm', 'x'):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite.")
        if self.m <= 0.0:
            raise DomainError(f"Mass must be positive, got m={self.m!r}.")
        if self.x <= 0.0:
            raise DomainError(f"Distance from the boundary must be positive, got x={self.x!r}.")

    @property
    def coupling(self):
        """g^2/m^2, the overall scale of both dispersions."""
        return (self.g / self.m) ** 2

    def moved(self, x):
        """Same particle at another distance."""
        return ParticleConfig(g=self.g, m=self.m, x=x)


@dataclass(frozen=True)
class EmParticleConfig:
    """
    Electric charge in front of a perfectly reflecting plane.

    Attributes:
        e (float): Electric charge.
        m (float): Mass, strictly positive.
        x (float): Distance from the plane, strictly positive.
    """
    e: float
    m: float
    x: float

    def __post_init__(self):
        for name in ('e', 'm', 'x'):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite.")
        if self.m <= 0.0:
            raise DomainError(f"Mass must be positive, got m={self.m!r}.")
        if self.x <= 0.0:
            raise DomainError(f"Distance from the plane must be positive, got x={self.x!r}.")


# ---------------------------------------------------------------------------- #
#                                DispersionValue                               #
# ---------------------------------------------------------------------------- #


class DispersionKind(str, enum.Enum):
    VELOCITY_SQUARED = 'velocity_squared'
    POSITION_SQUARED = 'position_squared'


@dataclass(frozen=True)
class DispersionValue:
    """
    One dispersion observable.

    When ``regular`` is False the value is a sentinel (signed infinity or
    NaN) and must not be used as a number; callers branch on the flag.
    ``error`` is zero for closed forms and carries the composite numerical
    error estimate for oracle values.
    """
    kind: DispersionKind
    value: float
    regular: bool = True
    error: float = 0.0
    provenance: str = 'closed-form'

    def as_dict(self):
        return {
            'kind': self.kind.value,
            'value': self.value if self.regular else None,
            'regular': self.regular,
            'error': self.error,
            'provenance': self.provenance,
        }


@dataclass(frozen=True)
class Interval:
    """Open interval (lower, upper)."""
    lower: float
    upper: float

    def __contains__(self, value):
        return self.lower < value < self.upper


# ---------------------------------------------------------------------------- #
#                                 SpacetimePair                                #
# ---------------------------------------------------------------------------- #


@dataclass(frozen=True)
class SpacetimePair:
    """Two events (x, t) and (x', t') on the half line x > 0."""
    x: float
    t: float
    x_prime: float
    t_prime: float

    def __post_init__(self):
        if self.x <= 0.0 or self.x_prime <= 0.0:
            raise DomainError("Both events must lie at positive distance from the boundary.")

    @property
    def image_separation(self):
        """(x+x')^2 - (t-t')^2, the argument of the renormalized kernel."""
        s = self.x + self.x_prime
        dt = self.t - self.t_prime
        return (s - dt) * (s + dt)


@dataclass(frozen=True)
class FiniteDifferenceSpec:
    """
    Mixed central difference d/dx d/dx' with step ``h``.

    The only scheme is the 4-point stencil
    [F(x+h,x'+h) - F(x+h,x'-h) - F(x-h,x'+h) + F(x-h,x'-h)] / 4h^2.
    """
    h: float
    scheme: str = 'central-mixed-4point'

    def __post_init__(self):
        if not self.h > 0.0:
            raise DomainError(f"Finite-difference step must be positive, got h={self.h!r}.")
        if self.scheme != 'central-mixed-4point':
            raise DomainError(f"Unknown finite-difference scheme {self.scheme!r}.")

    @classmethod
    def for_distance(cls, x, relative_step=None):
        if relative_step is None:
            relative_step = dispersion_settings.FINITE_DIFFERENCE_STEP
        return cls(h=relative_step * x)


# ---------------------------------------------------------------------------- #
#                                 QuadratureSpec                                #
# ---------------------------------------------------------------------------- #


@dataclass(frozen=True)
class QuadratureSpec:
    """
    Tolerances and declared singular points for ``adaptive_quad``.

    Attributes:
        abs_tol (float): Absolute error target.
        rel_tol (float): Relative error target.
        max_subdivisions (int): Panel budget.
        singularities (tuple): Points with integrable (logarithmic)
            singularities. Points outside the interval are dropped, points
            on an endpoint mark that endpoint as singular.
    """
    abs_tol: float = 1e-9
    rel_tol: float = 1e-9
    max_subdivisions: int = 500
    singularities: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if not (self.abs_tol > 0.0 and self.rel_tol > 0.0):
            raise DomainError("Quadrature tolerances must be positive.")
        if self.max_subdivisions <= 0:
            raise DomainError("max_subdivisions must be a positive integer.")
        object.__setattr__(self, 'singularities', tuple(sorted(float(p) for p in self.singularities)))

    @classmethod
    def from_settings(cls, key='QUADRATURE', **overrides):
        options = {**getattr(dispersion_settings, key), **overrides}
        return cls(**options)

    def with_singularities(self, *points):
        return QuadratureSpec(
            abs_tol=self.abs_tol,
            rel_tol=self.rel_tol,
            max_subdivisions=self.max_subdivisions,
            singularities=tuple(self.singularities) + tuple(points),
        )

    def tolerance_for(self, value):
        return max(self.abs_tol, self.rel_tol * abs(value))


@dataclass(frozen=True)
class SeriesResult:
    """Partial sum of a hypergeometric series and its convergence record."""
    value: float
    terms_used: int
    converged: bool
    error_estimate: float


# ---------------------------------------------------------------------------- #
#                                SmearingConfig                                #
# ---------------------------------------------------------------------------- #


@dataclass(frozen=True)
class SmearingConfig:
    """
    Gaussian position smearing.

    Attributes:
        sigma (float): Width of the Gaussian, strictly positive.
        n_sigma (float): Half-width of the integration window in units of
            sigma. Values below 5 are accepted but no longer meet the
            acceptance-grade truncation bound exp(-n_sigma^2/2).
    """
    sigma: float
    n_sigma: float = 8.0

    def __post_init__(self):
        if not self.sigma > 0.0:
            raise DomainError(f"Smearing width must be positive, got sigma={self.sigma!r}.")
        if not self.n_sigma > 0.0:
            raise DomainError(f"Window half-width must be positive, got n_sigma={self.n_sigma!r}.")

    @classmethod
    def from_settings(cls, sigma):
        return cls(sigma=sigma, n_sigma=dispersion_settings.SMEARING_N_SIGMA)

    @property
    def half_width(self):
        return self.n_sigma * self.sigma

    @property
    def truncation_bound(self):
        """Gaussian mass left outside the window is below this value."""
        return math.exp(-0.5 * self.n_sigma ** 2)


# ---------------------------------------------------------------------------- #
#                                   SweepGrid                                  #
# ---------------------------------------------------------------------------- #


class SweepVariable(str, enum.Enum):
    TAU_OVER_X = 'tau_over_x'
    SIGMA_OVER_X = 'sigma_over_x'


class SweepScale(str, enum.Enum):
    LINEAR = 'linear'
    LOG = 'log'


@dataclass(frozen=True)
class SweepGrid:
    """Parameter range for figure sweeps, in units of the distance x."""
    variable: SweepVariable
    start: float
    stop: float
    count: int
    scale: SweepScale = SweepScale.LINEAR

    def __post_init__(self):
        object.__setattr__(self, 'variable', SweepVariable(self.variable))
        object.__setattr__(self, 'scale', SweepScale(self.scale))
        if not self.start < self.stop:
            raise DomainError("Sweep start must be below stop.")
        if self.count < 2:
            raise DomainError("A sweep needs at least two points.")
        if self.scale is SweepScale.LOG and self.start <= 0.0:
            raise DomainError("Logarithmic sweeps need a positive start.")

    def values(self):
        if self.scale is SweepScale.LOG:
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepRow:
    """
    One point of a figure sweep.

    ``value`` is None for singular points and for points whose computation
    failed; ``note`` then says which.
    """
    abscissa: float
    value: float | None
    provenance: str = 'closed-form'
    error: float = 0.0
    sigma_over_x: float | None = None
    reference: float | None = None
    note: str = ''

    @property
    def regular(self):
        return self.value is not None

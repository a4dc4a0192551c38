"""
Closed-form dispersions of a scalar test particle near a Dirichlet point.

With r = tau^2 / 4x^2 the two closed forms read

    (dv)^2 = (g^2 / 2 pi m^2) ln|1 - r|
    (dx)^2 = (g^2 x^2 / pi m^2) [(r - 1) ln|r - 1| - r]

which are the familiar -(g^2/4 pi m^2) ln[(4x^2/(tau^2-4x^2))^2] and
(g^2/8 pi m^2)[(tau^2-4x^2) ln(((tau^2-4x^2)/4x^2)^2) - 2 tau^2] rewritten
so that small r goes through log1p and the point r = 1 is explicit.
"""

# python imports
import enum
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

# in app imports
from dispersion.conf import dispersion_settings
from dispersion.exceptions import DomainError
from dispersion.types import (
    DispersionKind,
    DispersionValue,
    Interval,
    check_measuring_time,
)


logger = logging.getLogger(__name__)

SUBVACUUM_EDGE = 2.0 * math.sqrt(2.0)


def on_light_cone(tau, x):
    """True when tau equals the round-trip time 2x up to a few ulps."""
    round_trip = 2.0 * x
    ulps = dispersion_settings.SINGULAR_ULPS
    return abs(tau - round_trip) <= ulps * math.ulp(max(abs(tau), round_trip))


def _log_abs_one_minus(tau, x):
    # ln|1 - r| with r = (tau / 2x)^2; log1p below the light cone, and far
    # above it 2 ln(tau / 2x) + log1p(-1/r) so that r may overflow
    q = tau / (2.0 * x)
    if q < 1.0:
        return math.log1p(-q * q)
    if q <= 2.0:
        return math.log(q * q - 1.0)
    return 2.0 * (math.log(tau) - math.log(x) - math.log(2.0)) + math.log1p(-1.0 / (q * q))


def _finite(kind, value, cfg, tau):
    if not math.isfinite(value):
        raise DomainError(f"{kind.value} at tau={tau!r} overflows for {cfg!r}.")
    return DispersionValue(kind, value)


# ---------------------------------------------------------------------------- #
#                              velocity_dispersion                             #
# ---------------------------------------------------------------------------- #


def velocity_dispersion(cfg, tau):
    """
    Renormalized velocity dispersion after a measuring time ``tau``.

    Negative values are subvacuum: fluctuations below the free-space level.
    At tau = 2x the value diverges to -inf; the result then carries
    ``regular=False``.

    Args:
        cfg (ParticleConfig): Particle.
        tau (float): Measuring time, >= 0.

    Returns:
        DispersionValue
    """
    tau = check_measuring_time(tau)
    if on_light_cone(tau, cfg.x):
        return DispersionValue(DispersionKind.VELOCITY_SQUARED, -math.inf, regular=False)

    value = cfg.coupling / (2.0 * math.pi) * _log_abs_one_minus(tau, cfg.x)
    return _finite(DispersionKind.VELOCITY_SQUARED, value, cfg, tau)


def velocity_dispersion_array(g, m, x, tau):
    """
    Vectorized velocity dispersion over an array of distances.

    No domain checks: the formula only sees x^2 and tau^2, so negative x
    mirror positive ones. Points on the light cone come back as -inf and
    x = 0 as +inf.
    """
    x = np.asarray(x, dtype=float)
    r = (np.asarray(tau, dtype=float) / (2.0 * x)) ** 2
    with np.errstate(divide='ignore', invalid='ignore'):
        logs = np.where(r < 1.0, np.log1p(-np.minimum(r, 1.0)), np.log(np.abs(r - 1.0)))
    return (g / m) ** 2 / (2.0 * math.pi) * logs


# ---------------------------------------------------------------------------- #
#                              position_dispersion                             #
# ---------------------------------------------------------------------------- #


def _position_bracket(tau, x):
    # x^2 [(r - 1) ln|r - 1| - r], with its limit -x^2 at r = 1
    if on_light_cone(tau, x):
        return -x ** 2
    log_term = _log_abs_one_minus(tau, x)
    if tau <= 4.0 * x:
        r = (tau / (2.0 * x)) ** 2
        return x ** 2 * ((r - 1.0) * log_term - r)
    half = 0.5 * tau
    return (half * half - x * x) * log_term - half * half


def position_dispersion(cfg, tau):
    """
    Position dispersion (dx)^2 after a measuring time ``tau``.

    Regular for every tau when x > 0. The round-trip point tau = 2x is the
    removable 0 * ln 0 limit and yields exactly -(g^2 / pi m^2) x^2.
    """
    tau = check_measuring_time(tau)
    value = cfg.coupling / math.pi * _position_bracket(tau, cfg.x)
    return _finite(DispersionKind.POSITION_SQUARED, value, cfg, tau)


def position_dispersion_array(g, m, x, tau):
    """Vectorized position dispersion; see ``velocity_dispersion_array``."""
    x = np.asarray(x, dtype=float)
    r = (np.asarray(tau, dtype=float) / (2.0 * x)) ** 2
    d = r - 1.0
    with np.errstate(divide='ignore', invalid='ignore'):
        shape = np.where(d == 0.0, -1.0, d * np.log(np.abs(d)) - r)
    return (g / m) ** 2 * x ** 2 / math.pi * shape


# ---------------------------------------------------------------------------- #
#                               subvacuum_window                               #
# ---------------------------------------------------------------------------- #


def subvacuum_window(cfg):
    """Open interval (0, 2 sqrt(2) x) of measuring times with (dv)^2 < 0."""
    return Interval(0.0, SUBVACUUM_EDGE * cfg.x)


class SubvacuumClass(str, enum.Enum):
    SUBVACUUM = 'subvacuum'
    VACUUM_LEVEL = 'vacuum-level'
    SUPERVACUUM = 'supervacuum'
    SINGULAR = 'singular'


def classify_subvacuum(cfg, tau):
    """Sign class of the velocity dispersion, from the window alone."""
    tau = check_measuring_time(tau)
    if on_light_cone(tau, cfg.x):
        return SubvacuumClass.SINGULAR
    if cfg.g == 0.0:
        return SubvacuumClass.VACUUM_LEVEL
    window = subvacuum_window(cfg)
    if tau in window:
        return SubvacuumClass.SUBVACUUM
    edge = dispersion_settings.SINGULAR_ULPS * math.ulp(window.upper)
    if tau == 0.0 or abs(tau - window.upper) <= edge:
        return SubvacuumClass.VACUUM_LEVEL
    return SubvacuumClass.SUPERVACUUM


# ---------------------------------------------------------------------------- #
#                                validity_metric                               #
# ---------------------------------------------------------------------------- #


@dataclass(frozen=True)
class ValidityReport:
    """
    Fixed-position check |(dx)^2| / x^2 at one tau.

    ``global_constraint`` is g^2 / (pi m^2), the value of the metric at
    tau = 2x, which must stay small for any x and tau.
    """
    metric: float
    global_constraint: float

    def holds(self, threshold):
        return self.metric < threshold and self.global_constraint < threshold


def global_validity_constraint(cfg):
    return cfg.coupling / math.pi


def validity_metric(cfg, tau):
    """|(dx)^2| / x^2 together with the global constraint g^2 / (pi m^2)."""
    dispersion = position_dispersion(cfg, tau)
    return ValidityReport(
        metric=abs(dispersion.value) / cfg.x ** 2,
        global_constraint=global_validity_constraint(cfg),
    )


def validity_horizon(cfg, threshold):
    """
    Measuring time at which the metric reaches ``threshold`` on its late branch.

    Past tau = 2 sqrt(2) x the shape (r-1) ln(r-1) - r first climbs back to
    zero and then grows without bound, so the horizon is the root of
    metric(tau) = threshold on the increasing branch. Crossings between the
    window edge, where the metric is 2 g^2 / (pi m^2), and that zero are
    not the horizon.
    """
    if not threshold > 0.0:
        raise DomainError(f"Validity threshold must be positive, got {threshold!r}.")
    if cfg.g == 0.0:
        raise DomainError("With zero coupling the fixed-position approximation never fails.")

    def excess(tau):
        return validity_metric(cfg, tau).metric - threshold

    # zero of the shape on the increasing branch: (r-1) ln(r-1) = r
    r_zero = brentq(lambda r: (r - 1.0) * math.log(r - 1.0) - r, 2.0 + 1e-12, 10.0)
    lower = 2.0 * cfg.x * math.sqrt(r_zero)
    upper = 2.0 * lower
    while excess(upper) < 0.0:
        upper *= 2.0
    horizon = brentq(excess, lower, upper, xtol=1e-12 * cfg.x)
    logger.debug("Validity horizon for g/m=%s at %s: tau=%s", cfg.g / cfg.m, threshold, horizon)
    return horizon

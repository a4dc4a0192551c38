"""
Velocity dispersions of an electric charge in front of a reflecting plane.

These are the electromagnetic counterparts the scalar model is compared
with: the perpendicular component saturates at e^2 / (4 pi^2 m^2 x^2) for
late times while the two parallel components die off.
"""

# python imports
import math

# in app imports
from dispersion.core import on_light_cone
from dispersion.types import DispersionKind, DispersionValue, check_measuring_time


def _log_ratio_squared(x, tau):
    # ln(((2x + tau) / (2x - tau))^2) as 2 ln|ratio|, no overflow near tau = 2x
    return 2.0 * math.log(abs((2.0 * x + tau) / (2.0 * x - tau)))


def _prefactor(cfg):
    return (cfg.e / cfg.m) ** 2 / math.pi ** 2


# ---------------------------------------------------------------------------- #
#                          em_velocity_dispersion_perp                         #
# ---------------------------------------------------------------------------- #


def em_velocity_dispersion_perp(cfg, tau):
    """
    Dispersion of the velocity component normal to the plane.

    (e^2 / pi^2 m^2) (tau / 32 x^3) ln[((2x + tau) / (2x - tau))^2]; +inf with
    ``regular=False`` at tau = 2x.
    """
    tau = check_measuring_time(tau)
    if on_light_cone(tau, cfg.x):
        return DispersionValue(DispersionKind.VELOCITY_SQUARED, math.inf, regular=False)
    if tau == 0.0:
        return DispersionValue(DispersionKind.VELOCITY_SQUARED, 0.0)

    value = _prefactor(cfg) * tau / (32.0 * cfg.x ** 3) * _log_ratio_squared(cfg.x, tau)
    return DispersionValue(DispersionKind.VELOCITY_SQUARED, value)


# ---------------------------------------------------------------------------- #
#                        em_velocity_dispersion_parallel                       #
# ---------------------------------------------------------------------------- #


def em_velocity_dispersion_parallel(cfg, tau):
    """
    Dispersion of either velocity component parallel to the plane.

    The two parallel components coincide. At tau = 2x the logarithm and the
    pole compete with opposite signs on either side, so the sentinel is NaN.
    """
    tau = check_measuring_time(tau)
    if on_light_cone(tau, cfg.x):
        return DispersionValue(DispersionKind.VELOCITY_SQUARED, math.nan, regular=False)
    if tau == 0.0:
        return DispersionValue(DispersionKind.VELOCITY_SQUARED, 0.0)

    x = cfg.x
    logarithmic = tau / (64.0 * x ** 3) * _log_ratio_squared(x, tau)
    pole = tau ** 2 / (8.0 * x ** 2 * (tau - 2.0 * x) * (tau + 2.0 * x))
    return DispersionValue(DispersionKind.VELOCITY_SQUARED, _prefactor(cfg) * (logarithmic - pole))


def em_late_time_perp(cfg):
    """tau -> infinity limit of the perpendicular dispersion, e^2 / (4 pi^2 m^2 x^2)."""
    return (cfg.e / cfg.m) ** 2 / (4.0 * math.pi ** 2 * cfg.x ** 2)

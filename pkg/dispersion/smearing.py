"""
Velocity dispersion averaged over a Gaussian-distributed particle position.

Letting the distance fluctuate as x + eps with eps ~ N(0, sigma^2) turns the
logarithmic divergence at tau = 2x into a finite well whose depth grows like
ln(sigma / x) as the smearing shrinks.
"""

# python imports
import logging
import math
import warnings

import numpy as np

# in app imports
from dispersion.conf import dispersion_settings
from dispersion.core import velocity_dispersion_array
from dispersion.exceptions import (
    BoundaryContactWarning,
    DispersionError,
    DomainError,
    SeriesNonConvergence,
)
from dispersion.numerics import adaptive_quad, hyp2f2_1_1_3h_2
from dispersion.types import (
    QuadratureSpec,
    SmearingConfig,
    SweepGrid,
    SweepRow,
    SweepVariable,
)
from dispersion.utils import ordered_map


logger = logging.getLogger(__name__)


def _symmetric_tau(tau):
    # only tau^2 enters, so negative measuring times are folded back
    tau = float(tau)
    if not math.isfinite(tau):
        raise DomainError(f"Measuring time must be finite, got {tau!r}.")
    return abs(tau)


def _gaussian(eps, sigma):
    return np.exp(-0.5 * (eps / sigma) ** 2) / (math.sqrt(2.0 * math.pi) * sigma)


# ---------------------------------------------------------------------------- #
#                          smeared_velocity_dispersion                         #
# ---------------------------------------------------------------------------- #


def smeared_velocity_dispersion(cfg, tau, s, q=None):
    """
    Gaussian average of the velocity dispersion over the particle position.

    Integrates (dv)^2(x + eps) against the N(0, sigma^2) density on the
    window |eps| <= n_sigma * sigma. The two light-cone points
    eps = +-tau/2 - x and the boundary eps = -x are declared to the
    quadrature wherever they fall inside the window. The Gaussian mass cut
    off by the window is below ``s.truncation_bound``.

    Args:
        cfg (ParticleConfig): Particle at its mean distance.
        tau (float): Measuring time; the result is even in tau.
        s (SmearingConfig): Width and window.
        q (QuadratureSpec): Tolerances, defaults to ``QUADRATURE``.

    Returns:
        float

    Warns:
        BoundaryContactWarning: the window reaches the boundary.
    """
    tau = _symmetric_tau(tau)
    if q is None:
        q = QuadratureSpec.from_settings()
    if tau == 0.0 or cfg.g == 0.0:
        return 0.0

    half_width = s.half_width
    if cfg.x < half_width:
        logger.warning("Smearing window +-%s reaches the boundary from x=%s.", half_width, cfg.x)
        warnings.warn(
            f"Smearing window of half-width {half_width} reaches the boundary from x={cfg.x}.",
            BoundaryContactWarning,
            stacklevel=2,
        )

    def integrand(eps):
        return velocity_dispersion_array(cfg.g, cfg.m, cfg.x + eps, tau) * _gaussian(eps, s.sigma)

    spec = q.with_singularities(-cfg.x, 0.5 * tau - cfg.x, -0.5 * tau - cfg.x)
    value, error = adaptive_quad(integrand, -half_width, half_width, spec)
    logger.debug("Smeared (dv)^2 at tau=%s, sigma=%s: %s +- %s", tau, s.sigma, value, error)
    return value


def smeared_well_depth_asymptote(cfg, s):
    """Small-sigma depth of the smeared well at tau = 2x, (g^2 / 4 pi m^2) ln(2 sigma^2 / x^2)."""
    return cfg.coupling / (4.0 * math.pi) * math.log(2.0 * s.sigma ** 2 / cfg.x ** 2)


# ---------------------------------------------------------------------------- #
#                                 smeared_curve                                #
# ---------------------------------------------------------------------------- #


def _smeared_row(cfg, s, q, tau_over_x):
    try:
        value = smeared_velocity_dispersion(cfg, tau_over_x * cfg.x, s, q)
    except DispersionError as exc:
        logger.warning("Smeared point tau/x=%s failed: %s", tau_over_x, exc)
        return SweepRow(tau_over_x, None, provenance='smeared', sigma_over_x=s.sigma / cfg.x, note=str(exc))
    return SweepRow(tau_over_x, value, provenance='smeared', sigma_over_x=s.sigma / cfg.x)


def smeared_curve(cfg, s, grid, q=None, workers=None):
    """
    Smeared velocity dispersion along a tau/x grid.

    Points run concurrently. A point whose quadrature fails comes back with
    ``value=None`` and the failure in ``note``; the rest of the curve is
    still computed.

    Returns:
        list of SweepRow in grid order.
    """
    if grid.variable is not SweepVariable.TAU_OVER_X:
        raise DomainError(f"Smeared curves run over tau_over_x, not {grid.variable.value}.")
    if grid.start <= 0.0:
        raise DomainError("Smeared curves need strictly positive measuring times.")
    if q is None:
        q = QuadratureSpec.from_settings()

    points = [float(t) for t in grid.values()]
    return ordered_map(lambda t: _smeared_row(cfg, s, q, t), points, workers)


# ---------------------------------------------------------------------------- #
#                               well_depth_curve                               #
# ---------------------------------------------------------------------------- #


def well_depth_curve(cfg, sigmas, q=None, n_sigma=None, workers=None):
    """
    Depth of the smeared well at tau = 2x against sigma/x.

    Each row carries the smeared value and, as ``reference``, the
    logarithmic asymptote it approaches for small sigma.

    Args:
        sigmas (SweepGrid or iterable): sigma/x values, or a sigma_over_x grid.
    """
    if isinstance(sigmas, SweepGrid):
        if sigmas.variable is not SweepVariable.SIGMA_OVER_X:
            raise DomainError(f"Well depths run over sigma_over_x, not {sigmas.variable.value}.")
        sigmas = sigmas.values()
    if n_sigma is None:
        n_sigma = dispersion_settings.SMEARING_N_SIGMA
    if q is None:
        q = QuadratureSpec.from_settings()

    def row(sigma_over_x):
        s = SmearingConfig(sigma=sigma_over_x * cfg.x, n_sigma=n_sigma)
        asymptote = smeared_well_depth_asymptote(cfg, s)
        try:
            value = smeared_velocity_dispersion(cfg, 2.0 * cfg.x, s, q)
        except DispersionError as exc:
            logger.warning("Well depth at sigma/x=%s failed: %s", sigma_over_x, exc)
            return SweepRow(sigma_over_x, None, provenance='smeared', sigma_over_x=sigma_over_x,
                            reference=asymptote, note=str(exc))
        return SweepRow(sigma_over_x, value, provenance='smeared', sigma_over_x=sigma_over_x,
                        reference=asymptote)

    return ordered_map(row, [float(v) for v in sigmas], workers)


# ---------------------------------------------------------------------------- #
#                  smeared_velocity_dispersion_hypergeometric                  #
# ---------------------------------------------------------------------------- #


def _hypergeometric_well(mu, sigma, tol):
    # (mu^2 / sigma^2) 2F2(1,1;3/2,2;-mu^2 / 2 sigma^2)
    z = -0.5 * (mu / sigma) ** 2
    if z == 0.0:
        return 0.0
    result = hyp2f2_1_1_3h_2(z, tol=tol)
    if not result.converged:
        raise SeriesNonConvergence(f"2F2 at z={z} lost accuracy: error {result.error_estimate:.3e}.", result)
    return -2.0 * z * result.value


def smeared_velocity_dispersion_hypergeometric(cfg, tau, s, tol=1e-12):
    """
    Same Gaussian average in closed form, for cross-checking the quadrature.

    With Z standard normal, E ln|mu + sigma Z| = ln sigma - (gamma + ln 2)/2
    + (mu^2 / 2 sigma^2) 2F2(1,1;3/2,2;-mu^2 / 2 sigma^2). Splitting
    ln|1 - tau^2/4y^2| into three logarithms, the constants cancel and

        smeared = (g^2 / 4 pi m^2) [L(x - tau/2) + L(x + tau/2) - 2 L(x)]

    with L(mu) = (mu^2 / sigma^2) 2F2(...; -mu^2 / 2 sigma^2). The average
    runs over the whole line, so it agrees with the windowed quadrature up
    to ``s.truncation_bound``.

    Raises:
        DomainError: some argument leaves the series envelope.
        SeriesNonConvergence: cancellation ate the requested accuracy.
    """
    tau = _symmetric_tau(tau)
    sigma = s.sigma
    centers = (cfg.x - 0.5 * tau, cfg.x + 0.5 * tau, cfg.x)
    envelope = dispersion_settings.SERIES_Z_ENVELOPE
    largest = max(0.5 * (mu / sigma) ** 2 for mu in centers)
    if largest > envelope:
        raise DomainError(
            f"2F2 argument {-largest} is outside the envelope |z| <= {envelope}; use the quadrature path."
        )

    wells = [_hypergeometric_well(mu, sigma, tol) for mu in centers]
    return cfg.coupling / (4.0 * math.pi) * (wells[0] + wells[1] - 2.0 * wells[2])

# python imports
import logging

# in app imports
from dispersion.conf import dispersion_settings
from dispersion.core import (
    classify_subvacuum,
    position_dispersion,
    validity_horizon,
    validity_metric,
    velocity_dispersion,
)
from dispersion.exceptions import SingularLocusError
from dispersion.smearing import smeared_velocity_dispersion
from dispersion.types import SmearingConfig


logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------- #
#                                evaluate_point                                #
# ---------------------------------------------------------------------------- #


def _result(quantity, value, provenance='closed-form', regular=True, error=0.0):
    return {
        'quantity': quantity,
        'value': value if regular else None,
        'regular': regular,
        'error': error,
        'provenance': provenance,
    }


def evaluate_point(cfg, tau, sigma=None, n_sigma=None, threshold=None, q=None, allow_singular=False):
    """
    Every closed-form observable at one (x, tau), plus the smeared value and
    the validity horizon when asked for.

    Args:
        cfg (ParticleConfig): Particle.
        tau (float): Measuring time.
        sigma (float): Smearing width; None skips the smeared value.
        n_sigma (float): Smearing window half-width in units of sigma.
        threshold (float): Validity threshold; None skips the horizon.
        q (QuadratureSpec): Quadrature for the smeared value.
        allow_singular (bool): Report tau = 2x instead of refusing it.

    Returns:
        tuple: (list of result dicts, dict of notes for the run summary)

    Raises:
        SingularLocusError: tau = 2x without ``allow_singular``.
    """
    velocity = velocity_dispersion(cfg, tau)
    if not velocity.regular and not allow_singular:
        raise SingularLocusError(
            f"tau = {tau} is the round-trip time 2x where (dv)^2 diverges; pass --allow-singular to report it."
        )

    position = position_dispersion(cfg, tau)
    validity = validity_metric(cfg, tau)
    results = [
        _result('velocity_dispersion', velocity.value, velocity.provenance, velocity.regular),
        _result('position_dispersion', position.value, position.provenance),
        _result('validity_metric', validity.metric),
        _result('global_validity_constraint', validity.global_constraint),
        _result('subvacuum_class', classify_subvacuum(cfg, tau).value),
    ]
    notes = {}

    if threshold is not None:
        results.append(_result('validity_holds', validity.holds(threshold)))
        if cfg.g != 0.0:
            results.append(_result('validity_horizon', validity_horizon(cfg, threshold)))

    if sigma is not None:
        if n_sigma is None:
            n_sigma = dispersion_settings.SMEARING_N_SIGMA
        s = SmearingConfig(sigma=sigma, n_sigma=n_sigma)
        smeared = smeared_velocity_dispersion(cfg, tau, s, q)
        results.append(_result('smeared_velocity_dispersion', smeared, provenance='smeared'))
        notes['truncation_bound'] = s.truncation_bound

    logger.debug("Evaluated %d quantities at x=%s, tau=%s.", len(results), cfg.x, tau)
    return results, notes

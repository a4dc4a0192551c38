"""
Self-verification suite behind ``manage.py verify``.

Every check is an independent callable returning a ``CheckResult``; the
suite runs them on the sweep pool and reports them in declaration order.
"""

# python imports
import logging
import math
from dataclasses import dataclass
from functools import partial

import numpy as np

# in app imports
from dispersion.core import (
    SUBVACUUM_EDGE,
    on_light_cone,
    position_dispersion,
    validity_metric,
    velocity_dispersion,
)
from dispersion.em import (
    em_late_time_perp,
    em_velocity_dispersion_parallel,
    em_velocity_dispersion_perp,
)
from dispersion.exceptions import DispersionError
from dispersion.numerics import adaptive_quad, hyp2f2_1_1_3h_2, pochhammer
from dispersion.oracle import position_dispersion_oracle, velocity_dispersion_oracle
from dispersion.smearing import smeared_velocity_dispersion, smeared_well_depth_asymptote
from dispersion.types import (
    EmParticleConfig,
    FiniteDifferenceSpec,
    ParticleConfig,
    QuadratureSpec,
    SmearingConfig,
)
from dispersion.utils import ordered_map


logger = logging.getLogger(__name__)

UNIT_PARTICLE = ParticleConfig(g=1.0, m=1.0, x=1.0)

ORACLE_GRID = (0.25, 0.5, 1.0, 1.5, 2.5, 3.0, 4.0)
FAST_VELOCITY_GRID = (0.5, 3.0)
FAST_POSITION_GRID = (0.5,)
RICHARDSON_GRID = (1.0, 3.0)
FAST_RICHARDSON_GRID = (1.0,)
RICHARDSON_STEPS = (0.02, 0.01)

VELOCITY_TOLERANCE = 1e-3
POSITION_TOLERANCE = 1e-2
SMEARING_SIGMAS = (0.05, 0.02, 0.01)

# 2F2(1,1;3/2,2;1) by an independent positive-term partial sum
HYP2F2_AT_ONE = 1.4452456133883471


# ---------------------------------------------------------------------------- #
#                                  CheckResult                                 #
# ---------------------------------------------------------------------------- #


@dataclass(frozen=True)
class CheckResult:
    """
    Outcome of one verification check.

    Attributes:
        name (str): Check identifier, e.g. ``oracle_velocity[tau/x=1.5]``.
        passed (bool): Whether the measured value met the criterion.
        measured (float): Deviation or quantity that was tested.
        limit (float): Bound it was tested against.
        detail (str): Human-readable context, or the error that aborted it.
    """
    name: str
    passed: bool
    measured: float | None = None
    limit: float | None = None
    detail: str = ''


@dataclass(frozen=True)
class Check:
    name: str
    run: object

    def __call__(self):
        try:
            result = self.run()
        except DispersionError as exc:
            logger.warning("Check %s raised %s: %s", self.name, type(exc).__name__, exc)
            return CheckResult(self.name, False, detail=f"{type(exc).__name__}: {exc}")
        return CheckResult(self.name, *result)


def _relative(value, reference):
    return abs(value - reference) / abs(reference)


# ---------------------------------------------------------------------------- #
#                                 oracle checks                                #
# ---------------------------------------------------------------------------- #


def _closed_velocity(tau, perturbation):
    return velocity_dispersion(UNIT_PARTICLE, tau).value * (1.0 + perturbation)


def _oracle_velocity(tau, perturbation):
    oracle = velocity_dispersion_oracle(UNIT_PARTICLE, tau)
    closed = _closed_velocity(tau, perturbation)
    deviation = _relative(oracle.value, closed)
    return deviation < VELOCITY_TOLERANCE, deviation, VELOCITY_TOLERANCE, f"oracle={oracle.value!r} closed={closed!r}"


def _oracle_position(tau):
    oracle = position_dispersion_oracle(UNIT_PARTICLE, tau)
    closed = position_dispersion(UNIT_PARTICLE, tau).value
    deviation = _relative(oracle.value, closed)
    return deviation < POSITION_TOLERANCE, deviation, POSITION_TOLERANCE, f"oracle={oracle.value!r} closed={closed!r}"


def _richardson(tau, perturbation):
    closed = _closed_velocity(tau, perturbation)
    errors = []
    for step in RICHARDSON_STEPS:
        fd = FiniteDifferenceSpec.for_distance(UNIT_PARTICLE.x, relative_step=step)
        errors.append(abs(velocity_dispersion_oracle(UNIT_PARTICLE, tau, fd=fd).value - closed))
    ratio = errors[0] / errors[1] if errors[1] > 0.0 else math.inf
    return 3.5 <= ratio <= 4.5, ratio, 4.0, f"errors={errors[0]:.3e},{errors[1]:.3e}"


# ---------------------------------------------------------------------------- #
#                              closed-form anchors                             #
# ---------------------------------------------------------------------------- #


def _round_trip_position():
    value = position_dispersion(UNIT_PARTICLE, 2.0).value
    deviation = _relative(value, -1.0 / math.pi)
    return deviation <= 1e-12, deviation, 1e-12, f"value={value!r}"


def _validity_anchor(ratio, tau_over_x, quoted):
    report = validity_metric(ParticleConfig(g=ratio, m=1.0, x=1.0), tau_over_x)
    deviation = _relative(report.metric, quoted)
    return deviation < 0.05, deviation, 0.05, f"metric={report.metric:.4f} quoted={quoted}"


def _sign_scan(perturbation):
    mismatches = 0
    for tau in np.linspace(0.01, 4.0, 400):
        tau = float(tau)
        if on_light_cone(tau, 1.0):
            continue
        value = _closed_velocity(tau, perturbation)
        expected = -1.0 if tau < SUBVACUUM_EDGE else 1.0
        if math.copysign(1.0, value) != expected:
            mismatches += 1
    return mismatches == 0, float(mismatches), 0.0, "sign flips only at tau = 2 sqrt(2) x"


def _em_late_time():
    cfg = EmParticleConfig(e=1.0, m=1.0, x=1.0)
    tau = 1e4
    perp = em_velocity_dispersion_perp(cfg, tau).value
    parallel = em_velocity_dispersion_parallel(cfg, tau).value
    deviation = _relative(perp, em_late_time_perp(cfg))
    passed = deviation < 1e-3 and abs(parallel) < 1e-3 * perp
    return passed, deviation, 1e-3, f"perp={perp!r} parallel={parallel!r}"


# ---------------------------------------------------------------------------- #
#                               numerics checks                                #
# ---------------------------------------------------------------------------- #


def _pochhammer_identities():
    failures = []
    if pochhammer(7.25, 0) != 1.0:
        failures.append('(a)_0')
    if pochhammer(1.5, 2) != 3.75:
        failures.append('(3/2)_2')
    if any(pochhammer(1.0, n) != math.factorial(n) for n in range(15)):
        failures.append('(1)_n')
    return not failures, float(len(failures)), 0.0, ', '.join(failures)


def _hyp2f2_origin():
    at_zero = hyp2f2_1_1_3h_2(0.0).value
    z = 1e-4
    remainder = abs(hyp2f2_1_1_3h_2(z).value - 1.0 - z / 3.0)
    passed = at_zero == 1.0 and remainder < z * z
    return passed, remainder, z * z, f"2F2(0)={at_zero!r}"


def _hyp2f2_regression():
    first = hyp2f2_1_1_3h_2(1.0)
    second = hyp2f2_1_1_3h_2(1.0)
    deviation = _relative(first.value, HYP2F2_AT_ONE)
    passed = first.converged and first.value == second.value and deviation < 1e-12
    return passed, deviation, 1e-12, f"2F2(1)={first.value!r}"


def _quadrature_examples():
    third = 1.0 / 3.0
    cases = (
        (lambda u: u, 0.0, 1.0, (), 0.5),
        (lambda u: -np.log(u), 0.0, 1.0, (0.0,), 1.0),
        (lambda u: np.log(np.abs(u - third)), 0.0, 1.0, (third,),
         -1.0 + third * math.log(third) + 2.0 * third * math.log(2.0 * third)),
    )
    worst = 0.0
    passed = True
    for f, a, b, points, exact in cases:
        spec = QuadratureSpec.from_settings(singularities=points)
        value, error = adaptive_quad(f, a, b, spec)
        true_error = abs(value - exact)
        passed = passed and true_error <= error and error <= spec.tolerance_for(value)
        worst = max(worst, true_error)
    return passed, worst, None, "reported error bounds the true error"


# ---------------------------------------------------------------------------- #
#                               smearing checks                                #
# ---------------------------------------------------------------------------- #


def _smearing_asymptote():
    deviations = []
    for sigma in SMEARING_SIGMAS:
        s = SmearingConfig.from_settings(sigma)
        smeared = smeared_velocity_dispersion(UNIT_PARTICLE, 2.0, s)
        asymptote = smeared_well_depth_asymptote(UNIT_PARTICLE, s)
        deviations.append(_relative(smeared, asymptote))
    monotone = all(later < earlier for earlier, later in zip(deviations, deviations[1:]))
    passed = monotone and deviations[0] < 0.2
    return passed, deviations[0], 0.2, "deviations=" + ','.join(f"{d:.4f}" for d in deviations)


def _smearing_halving():
    sigma = SMEARING_SIGMAS[-1]
    depths = [
        smeared_velocity_dispersion(UNIT_PARTICLE, 2.0, SmearingConfig.from_settings(width))
        for width in (2.0 * sigma, sigma)
    ]
    expected = math.log(0.25) / (4.0 * math.pi)
    deviation = _relative(depths[1] - depths[0], expected)
    return deviation < 0.1, deviation, 0.1, f"difference={depths[1] - depths[0]!r}"


def _smearing_regular():
    values = [
        smeared_velocity_dispersion(UNIT_PARTICLE, 2.0, SmearingConfig.from_settings(sigma))
        for sigma in (0.2, 0.1, 0.05, 0.02)
    ]
    finite = all(math.isfinite(v) for v in values)
    return finite, None, None, "smeared values at tau = 2x are finite"


# ---------------------------------------------------------------------------- #
#                                  build_checks                                #
# ---------------------------------------------------------------------------- #


def build_checks(grid=None, fast=False, perturbation=0.0):
    """
    Assemble the suite.

    Args:
        grid (sequence): tau/x values for the oracle comparisons; replaces
            the default grid for velocity and position alike.
        fast (bool): Reduced oracle and Richardson grids.
        perturbation (float): Relative error injected into the closed-form
            velocity; a nonzero value must make the suite fail.
    """
    if grid:
        velocity_grid = position_grid = tuple(grid)
    elif fast:
        velocity_grid, position_grid = FAST_VELOCITY_GRID, FAST_POSITION_GRID
    else:
        velocity_grid = position_grid = ORACLE_GRID
    richardson_grid = FAST_RICHARDSON_GRID if fast else RICHARDSON_GRID

    checks = [Check(f"oracle_velocity[tau/x={t}]", partial(_oracle_velocity, t, perturbation)) for t in velocity_grid]
    checks += [Check(f"oracle_position[tau/x={t}]", partial(_oracle_position, t)) for t in position_grid]
    checks += [Check(f"richardson[tau/x={t}]", partial(_richardson, t, perturbation)) for t in richardson_grid]
    checks += [
        Check('position_round_trip', _round_trip_position),
        Check('validity[g/m=0.1,tau/x=10]', partial(_validity_anchor, 0.1, 10.0, 0.16)),
        Check('validity[g/m=0.01,tau/x=50]', partial(_validity_anchor, 0.01, 50.0, 0.11)),
        Check('sign_scan', partial(_sign_scan, perturbation)),
        Check('em_late_time', _em_late_time),
        Check('pochhammer', _pochhammer_identities),
        Check('hyp2f2_origin', _hyp2f2_origin),
        Check('hyp2f2_regression', _hyp2f2_regression),
        Check('adaptive_quad_examples', _quadrature_examples),
        Check('smearing_asymptote', _smearing_asymptote),
        Check('smearing_halving', _smearing_halving),
        Check('smearing_regular', _smearing_regular),
    ]
    return checks


def run_checks(checks, workers=None):
    """Run every check; results come back in the order of ``checks``."""
    results = ordered_map(lambda check: check(), checks, workers)
    for result in results:
        if result.passed:
            logger.info("PASS %s", result.name)
        else:
            logger.warning("FAIL %s: %s", result.name, result.detail)
    return results


def summarize(results):
    failed = [result.name for result in results if not result.passed]
    return {'total': len(results), 'passed': len(results) - len(failed), 'failed': failed}


def render_table(results):
    """Aligned pass/fail table, one check per line."""
    width = max((len(result.name) for result in results), default=0)
    lines = []
    for result in results:
        status = 'PASS' if result.passed else 'FAIL'
        measured = '' if result.measured is None else f"{result.measured:.3e}"
        limit = '' if result.limit is None else f"{result.limit:.1e}"
        lines.append(f"{status}  {result.name:<{width}}  {measured:>10}  {limit:>8}  {result.detail}")
    return '\n'.join(lines) + '\n'

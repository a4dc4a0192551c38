import math

import numpy as np
import pytest
from scipy import integrate

from dispersion.core import position_dispersion, velocity_dispersion
from dispersion.exceptions import DomainError, SingularLocusError
from dispersion.oracle import (
    NORMALIZATION,
    check_stencil,
    double_time_integral,
    kernel_im_gf,
    mode_function,
    position_dispersion_oracle,
    reduced_double_integral,
    truncated_double_time_integral,
    velocity_correlation,
    velocity_dispersion_oracle,
)
from dispersion.types import FiniteDifferenceSpec, ParticleConfig, QuadratureSpec, SpacetimePair


# --------------------------------- particle --------------------------------- #


@pytest.fixture
def particle():
    return ParticleConfig(g=1.0, m=1.0, x=1.0)


def _kernel(s, eta):
    return math.log(abs(s * s - eta * eta)) / (4.0 * math.pi)


# ------------------------------- mode_function ------------------------------ #


def test_mode_function_vanishes_on_boundary():
    assert mode_function(2.0, 3.0, 0.0, 0.7) == 0.0


def test_mode_function_vanishes_on_boundary_for_random_modes():
    rng = np.random.default_rng(20)
    omega, k, t = rng.uniform(-50.0, 50.0, size=(3, 100))
    assert np.all(mode_function(omega, k, 0.0, t) == 0.0)


def test_mode_function_phase_and_bound():
    xs = np.linspace(0.0, 5.0, 41)
    still = mode_function(1.3, 1.3, xs, 0.0)
    moving = mode_function(1.3, 1.3, xs, 2.1)
    np.testing.assert_allclose(moving, np.exp(-1j * 1.3 * 2.1) * still, rtol=1e-14, atol=1e-15)
    assert np.all(np.abs(moving) <= NORMALIZATION * (1.0 + 1e-15))


def test_mode_function_half_line():
    with pytest.raises(DomainError):
        mode_function(1.0, 1.0, -0.1, 0.0)


# ------------------------------- kernel_im_gf ------------------------------- #


def test_kernel_value():
    pair = SpacetimePair(x=1.0, t=0.0, x_prime=1.0, t_prime=0.0)
    assert kernel_im_gf(pair) == pytest.approx(math.log(4.0) / (4.0 * math.pi), rel=1e-15)
    assert kernel_im_gf(pair) == pytest.approx(0.110318, abs=5e-7)


def test_kernel_is_symmetric():
    forward = SpacetimePair(x=0.4, t=1.5, x_prime=1.1, t_prime=0.2)
    backward = SpacetimePair(x=1.1, t=0.2, x_prime=0.4, t_prime=1.5)
    assert kernel_im_gf(forward) == kernel_im_gf(backward)


def test_kernel_light_cone():
    with pytest.raises(SingularLocusError):
        kernel_im_gf(SpacetimePair(x=1.0, t=0.0, x_prime=1.0, t_prime=2.0))


# --------------------------- double_time_integral --------------------------- #


def test_double_time_integral_is_symmetric():
    assert double_time_integral(0.3, 0.9, 1.7) == double_time_integral(0.9, 0.3, 1.7)


def test_double_time_integral_against_dblquad():
    expected, _ = integrate.dblquad(lambda y, z: _kernel(2.0, z - y), 0.0, 1.0, 0.0, 1.0, epsabs=1e-13, epsrel=1e-12)
    assert double_time_integral(1.0, 1.0, 1.0) == pytest.approx(expected, rel=1e-9)


def test_double_time_integral_across_light_cone():
    tau, s = 2.0, 1.0
    expected, _ = integrate.quad(
        lambda eta: 2.0 * (tau - eta) * _kernel(s, eta), 0.0, tau, points=[s], epsabs=1e-13, epsrel=1e-12, limit=200
    )
    assert double_time_integral(0.5, 0.5, tau) == pytest.approx(expected, rel=1e-8)


@pytest.mark.parametrize("tau", [2.0, 3.5])
def test_double_time_integral_splitting_window(tau):
    base = QuadratureSpec.from_settings('ORACLE_QUADRATURE')
    reference = double_time_integral(0.5, 0.5, tau, base)
    for width in (0.2, 0.1, 0.05):
        refined = double_time_integral(0.5, 0.5, tau, base.with_singularities(1.0 - width, 1.0 + width))
        assert refined == pytest.approx(reference, rel=1e-6)


def test_reduced_double_integral_of_constant():
    q = QuadratureSpec()
    for tau in (0.5, 1.0, 3.0):
        value, _ = reduced_double_integral(lambda eta: np.full_like(eta, 3.0), tau, q)
        assert value == pytest.approx(3.0 * tau ** 2, rel=1e-14)


def test_double_time_integral_zero_time():
    assert double_time_integral(1.0, 1.0, 0.0) == 0.0


# ------------------------ truncated_double_time_integral -------------------- #


def test_truncated_integral_on_diagonal():
    assert truncated_double_time_integral(1.0, 1.0, 1.4, 1.4) == pytest.approx(
        double_time_integral(1.0, 1.0, 1.4), rel=1e-15
    )


def test_truncated_integral_against_dblquad():
    expected, _ = integrate.dblquad(lambda y, z: _kernel(2.0, z - y), 0.0, 0.7, 0.0, 1.3, epsabs=1e-13, epsrel=1e-12)
    assert truncated_double_time_integral(1.0, 1.0, 0.7, 1.3) == pytest.approx(expected, rel=1e-9)
    assert truncated_double_time_integral(1.0, 1.0, 1.3, 0.7) == pytest.approx(expected, rel=1e-9)


# ------------------------ velocity_dispersion_oracle ------------------------ #


@pytest.mark.parametrize("tau", [0.25, 0.5, 1.0, 1.5, 2.5, 3.0, 4.0])
def test_velocity_oracle_matches_closed_form(particle, tau):
    oracle = velocity_dispersion_oracle(particle, tau)
    assert oracle.provenance == 'oracle'
    assert oracle.value == pytest.approx(velocity_dispersion(particle, tau).value, rel=1e-3)


def test_velocity_oracle_without_coupling():
    cfg = ParticleConfig(g=0.0, m=1.0, x=1.0)
    assert velocity_dispersion_oracle(cfg, 1.0).value == 0.0


@pytest.mark.parametrize("tau", [2.0, 2.001])
def test_velocity_oracle_refuses_round_trip(particle, tau):
    with pytest.raises(SingularLocusError):
        velocity_dispersion_oracle(particle, tau)


def test_stencil_reaching_boundary():
    cfg = ParticleConfig(g=1.0, m=1.0, x=0.01)
    with pytest.raises(SingularLocusError):
        check_stencil(cfg, FiniteDifferenceSpec(h=0.02), 1.0)


def test_richardson_order(particle):
    closed = velocity_dispersion(particle, 1.0).value
    errors = [
        abs(velocity_dispersion_oracle(particle, 1.0, fd=FiniteDifferenceSpec(h=h)).value - closed)
        for h in (0.02, 0.01)
    ]
    assert 3.5 <= errors[0] / errors[1] <= 4.5


# --------------------------- velocity_correlation --------------------------- #


def test_correlation_diagonal_is_dispersion(particle):
    value, error = velocity_correlation(particle, 1.2, 1.2)
    assert value == pytest.approx(velocity_dispersion_oracle(particle, 1.2).value, rel=1e-12)
    assert error >= 0.0


def test_correlation_is_symmetric(particle):
    forward, _ = velocity_correlation(particle, 0.4, 1.1)
    backward, _ = velocity_correlation(particle, 1.1, 0.4)
    assert forward == pytest.approx(backward, rel=1e-8)


def test_correlation_integrates_to_position(particle):
    # 8x8 Gauss-Legendre over [0, tau]^2
    tau = 0.5
    nodes, weights = np.polynomial.legendre.leggauss(8)
    times = 0.5 * tau * (nodes + 1.0)
    total = 0.0
    for t1, w1 in zip(times, weights):
        for t2, w2 in zip(times, weights):
            total += w1 * w2 * velocity_correlation(particle, float(t1), float(t2))[0]
    total *= (0.5 * tau) ** 2
    assert total == pytest.approx(position_dispersion(particle, tau).value, rel=1e-3)


# ------------------------ position_dispersion_oracle ------------------------ #


@pytest.mark.parametrize("tau", [0.25, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0])
def test_position_oracle_matches_closed_form(particle, tau):
    oracle = position_dispersion_oracle(particle, tau)
    assert oracle.value == pytest.approx(position_dispersion(particle, tau).value, rel=1e-2)
    assert oracle.error > 0.0


def test_position_oracle_zero_time(particle):
    assert position_dispersion_oracle(particle, 0.0).value == 0.0

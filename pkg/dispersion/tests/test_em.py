import math

import pytest

from dispersion.em import (
    em_late_time_perp,
    em_velocity_dispersion_parallel,
    em_velocity_dispersion_perp,
)
from dispersion.exceptions import DomainError
from dispersion.types import EmParticleConfig


# ---------------------------------- charge ---------------------------------- #


@pytest.fixture
def charge():
    return EmParticleConfig(e=1.0, m=1.0, x=1.0)


# ------------------------------ test_zero_time ------------------------------ #


def test_zero_time(charge):
    assert em_velocity_dispersion_perp(charge, 0.0).value == 0.0
    assert em_velocity_dispersion_parallel(charge, 0.0).value == 0.0


# ------------------------------ test_unit_time ------------------------------ #


def test_perp_at_unit_time(charge):
    squared_ratio = math.log(((2.0 + 1.0) / (2.0 - 1.0)) ** 2)
    expected = squared_ratio / (32.0 * math.pi ** 2)
    value = em_velocity_dispersion_perp(charge, 1.0).value
    assert value == pytest.approx(expected, rel=1e-12)
    assert value == pytest.approx(0.0069570, abs=5e-8)


def test_parallel_at_unit_time(charge):
    # (1/pi^2) [(1/64) ln 9 + 1/24]
    expected = (math.log(9.0) / 64.0 + 1.0 / 24.0) / math.pi ** 2
    rearranged = (1.0 / math.pi ** 2) * (1.0 / 64.0 * math.log(9.0) - 1.0 / (8.0 * (1.0 - 4.0)))
    value = em_velocity_dispersion_parallel(charge, 1.0).value
    assert value == pytest.approx(expected, rel=1e-12)
    assert value == pytest.approx(rearranged, rel=1e-12)
    assert value == pytest.approx(0.0077002, abs=5e-8)


# ---------------------------- test_late_time_split -------------------------- #


def test_late_time_split(charge):
    tau = 1e4
    perp = em_velocity_dispersion_perp(charge, tau).value
    parallel = em_velocity_dispersion_parallel(charge, tau).value
    assert em_late_time_perp(charge) == pytest.approx(1.0 / (4.0 * math.pi ** 2))
    assert perp == pytest.approx(em_late_time_perp(charge), rel=1e-3)
    assert abs(parallel) < 1e-3 * perp


def test_parallel_dies_off(charge):
    values = [abs(em_velocity_dispersion_parallel(charge, tau).value) for tau in (10.0, 100.0, 1000.0)]
    assert values[0] > values[1] > values[2]
    # leading behaviour -1 / (3 pi^2 tau^2)
    assert em_velocity_dispersion_parallel(charge, 100.0).value == pytest.approx(
        -1.0 / (3.0 * math.pi ** 2 * 100.0 ** 2), rel=1e-2
    )


# ------------------------------ test_singular ------------------------------- #


def test_round_trip_sentinels(charge):
    perp = em_velocity_dispersion_perp(charge, 2.0)
    parallel = em_velocity_dispersion_parallel(charge, 2.0)
    assert not perp.regular and perp.value == math.inf
    assert not parallel.regular and math.isnan(parallel.value)


def test_divergence_from_both_sides(charge):
    below = em_velocity_dispersion_parallel(charge, 2.0 - 1e-9).value
    above = em_velocity_dispersion_parallel(charge, 2.0 + 1e-9).value
    assert below > 1e6
    assert above < -1e6
    assert em_velocity_dispersion_perp(charge, 2.0 - 1e-9).value > em_velocity_dispersion_perp(charge, 1.9).value
    assert em_velocity_dispersion_perp(charge, 2.0 + 1e-9).value > em_velocity_dispersion_perp(charge, 2.1).value


# ------------------------------- test_scaling ------------------------------- #


@pytest.mark.parametrize("scale", [0.5, 2.0, 10.0])
@pytest.mark.parametrize("tau", [0.5, 3.0, 7.0])
def test_scaling(charge, scale, tau):
    moved = EmParticleConfig(e=1.0, m=1.0, x=scale)
    for dispersion in (em_velocity_dispersion_perp, em_velocity_dispersion_parallel):
        assert dispersion(moved, scale * tau).value == pytest.approx(
            dispersion(charge, tau).value / scale ** 2, rel=1e-12
        )


# ------------------------------ test_domain --------------------------------- #


@pytest.mark.parametrize("m, x", [(0.0, 1.0), (1.0, 0.0), (-1.0, 1.0)])
def test_domain(m, x):
    with pytest.raises(DomainError):
        EmParticleConfig(e=1.0, m=m, x=x)


@pytest.mark.parametrize("kwargs", [
    {'e': 1.0, 'm': math.nan, 'x': 1.0},
    {'e': 1.0, 'm': 1.0, 'x': math.inf},
    {'e': math.nan, 'm': 1.0, 'x': 1.0},
])
def test_non_finite_parameters(kwargs):
    with pytest.raises(DomainError):
        EmParticleConfig(**kwargs)

"""
First-principles reconstruction of the dispersions.

The renormalized Feynman propagator of a massless field with a Dirichlet
point at x = 0 gives, after the real part is dropped,

    i G_F^R(x, t; x', t') = (1/4 pi) ln|(x + x')^2 - (t - t')^2|

up to an infrared constant that the x-derivatives remove. The dispersions
are (g^2/m^2) d/dx d/dx' of time integrals of this kernel at x' = x. The
time integrals are done numerically first and the derivatives are taken
afterwards by a mixed central difference: differentiating under the
integral would leave a non-integrable 1/(eta - 2x)^2 kernel.
"""

# python imports
import logging
import math

import numpy as np

# in app imports
from dispersion.core import on_light_cone
from dispersion.exceptions import DomainError, SingularLocusError
from dispersion.numerics import EPS, adaptive_quad
from dispersion.types import (
    DispersionKind,
    DispersionValue,
    FiniteDifferenceSpec,
    QuadratureSpec,
    check_measuring_time,
)


logger = logging.getLogger(__name__)

NORMALIZATION = (2.0 * math.pi ** 2) ** -0.5


# ---------------------------------------------------------------------------- #
#                                 mode_function                                #
# ---------------------------------------------------------------------------- #


def mode_function(omega, k, x, t):
    """
    Dirichlet eigenfunction psi_{omega,k}(x, t) = (2 pi^2)^(-1/2) e^(-i omega t) sin(k x).

    Vanishes identically at x = 0; works on scalars and numpy arrays.
    """
    if np.any(np.asarray(x) < 0.0):
        raise DomainError("Mode functions live on the half line x >= 0.")
    return NORMALIZATION * np.exp(-1j * np.multiply(omega, t)) * np.sin(np.multiply(k, x))


# ---------------------------------------------------------------------------- #
#                                 kernel_im_gf                                 #
# ---------------------------------------------------------------------------- #


def kernel_im_gf(pair):
    """
    (1/4 pi) ln|(x + x')^2 - (t - t')^2| for a pair of events.

    Raises:
        SingularLocusError: the pair sits on the reflected light cone.
    """
    separation = pair.image_separation
    scale = (pair.x + pair.x_prime) ** 2 + (pair.t - pair.t_prime) ** 2
    if abs(separation) <= 4.0 * EPS * scale:
        raise SingularLocusError(
            f"Events are light-like through the boundary: (x+x')^2 = (t-t')^2 = {scale / 2.0}."
        )
    return math.log(abs(separation)) / (4.0 * math.pi)


def _image_kernel(s, eta):
    # same kernel as a function of eta = |t - t'|, split so that the
    # cancellation in s^2 - eta^2 never happens
    return (np.log(np.abs(s - eta)) + np.log(s + eta)) / (4.0 * math.pi)


# ---------------------------------------------------------------------------- #
#                              double_time_integral                            #
# ---------------------------------------------------------------------------- #


def reduced_double_integral(f, tau, q):
    """
    int_0^tau int_0^tau f(|z - y|) dz dy written as 2 int_0^tau (tau - eta) f(eta) d eta.

    Returns:
        tuple: (value, error estimate)
    """
    def integrand(eta):
        return 2.0 * (tau - eta) * f(eta)

    return adaptive_quad(integrand, 0.0, tau, q)


def _square_integral(s, tau, q):
    if tau == 0.0:
        return 0.0, 0.0
    spec = q.with_singularities(s) if s <= tau else q
    return reduced_double_integral(lambda eta: _image_kernel(s, eta), tau, spec)


def double_time_integral(x, x_prime, tau, q=None):
    """
    Time-integrated kernel over the square [0, tau]^2.

    Depends on the positions only through x + x', so swapping them gives the
    same float. For tau > x + x' the reflected light cone crosses the square
    and the logarithmic singularity at eta = x + x' is split out.

    Raises:
        QuadratureError: carrying the achieved error estimate.
    """
    if q is None:
        q = QuadratureSpec.from_settings('ORACLE_QUADRATURE')
    if not x + x_prime > 0.0:
        raise DomainError("x + x' must be positive.")
    tau = check_measuring_time(tau)
    value, _ = _square_integral(x + x_prime, tau, q)
    return value


def truncated_double_time_integral(x, x_prime, t1, t2, q=None):
    """
    Kernel integrated over the rectangle [0, t1] x [0, t2].

    For a kernel even in t - t' the rectangle splits into squares:
    A(t1) + A(t2) - A(|t1 - t2|), with A(t) half the square integral.
    """
    if q is None:
        q = QuadratureSpec.from_settings('ORACLE_QUADRATURE')
    value, _ = _rectangle_integral(x + x_prime, check_measuring_time(t1), check_measuring_time(t2), q)
    return value


def _rectangle_integral(s, t1, t2, q):
    total, error = 0.0, 0.0
    for sign, t in ((1.0, t1), (1.0, t2), (-1.0, abs(t1 - t2))):
        value, err = _square_integral(s, t, q)
        total += 0.5 * sign * value
        error += 0.5 * err
    return total, error


# ---------------------------------------------------------------------------- #
#                              mixed differences                               #
# ---------------------------------------------------------------------------- #


def check_stencil(cfg, fd, *times):
    if cfg.x - fd.h <= 0.0:
        raise SingularLocusError(f"Step h={fd.h} reaches the boundary from x={cfg.x}.")
    reach = 2.0 * fd.h * (1.0 + 1e-9)
    for t in times:
        if abs(t - 2.0 * cfg.x) <= reach:
            raise SingularLocusError(
                f"Time {t} is within the finite-difference stencil of the round trip 2x={2.0 * cfg.x}."
            )


def _mixed_difference(F, x, h):
    """
    d/dx d/dx' F at x' = x from the 4-point central stencil.

    ``F`` takes x + x' and returns (value, error). Evaluations are memoized
    per call, so the two cross terms cost one quadrature.
    """
    cache = {}

    def evaluate(s):
        if s not in cache:
            cache[s] = F(s)
        return cache[s]

    value, error = 0.0, 0.0
    for sign, s in ((1.0, (x + h) + (x + h)), (-1.0, (x + h) + (x - h)),
                    (-1.0, (x - h) + (x + h)), (1.0, (x - h) + (x - h))):
        v, e = evaluate(s)
        value += sign * v
        error += e
    scale = 4.0 * h * h
    return value / scale, error / scale


# ---------------------------------------------------------------------------- #
#                          velocity_dispersion_oracle                          #
# ---------------------------------------------------------------------------- #


def _defaults(cfg, fd, q):
    if fd is None:
        fd = FiniteDifferenceSpec.for_distance(cfg.x)
    if q is None:
        q = QuadratureSpec.from_settings('ORACLE_QUADRATURE')
    return fd, q


def velocity_dispersion_oracle(cfg, tau, fd=None, q=None):
    """
    (dv)^2 rebuilt from the propagator: (g^2/m^2) times the mixed difference
    of ``double_time_integral`` in (x, x') at x' = x.

    Raises:
        SingularLocusError: tau = 2x, or the stencil straddles it.
        QuadratureError: an inner integral failed.
    """
    tau = check_measuring_time(tau)
    fd, q = _defaults(cfg, fd, q)
    if on_light_cone(tau, cfg.x):
        raise SingularLocusError(f"tau = 2x = {tau} is the round-trip singularity.")
    check_stencil(cfg, fd, tau)

    value, error = _mixed_difference(lambda s: _square_integral(s, tau, q), cfg.x, fd.h)
    return DispersionValue(
        DispersionKind.VELOCITY_SQUARED,
        cfg.coupling * value,
        error=cfg.coupling * error,
        provenance='oracle',
    )


# ---------------------------------------------------------------------------- #
#                             velocity_correlation                             #
# ---------------------------------------------------------------------------- #


def _correlation(cfg, t1, t2, fd, q):
    value, error = _mixed_difference(lambda s: _rectangle_integral(s, t1, t2, q), cfg.x, fd.h)
    return cfg.coupling * value, cfg.coupling * error


def velocity_correlation(cfg, t1, t2, fd=None, q=None):
    """
    Unequal-time correlation <v(t1) v(t2)> of the particle velocity.

    Built from the rectangle-truncated time integral of the kernel; on the
    diagonal t1 = t2 = tau it is the velocity dispersion.

    Returns:
        tuple: (value, error estimate)
    """
    t1, t2 = check_measuring_time(t1), check_measuring_time(t2)
    fd, q = _defaults(cfg, fd, q)
    check_stencil(cfg, fd, t1, t2, abs(t1 - t2))
    return _correlation(cfg, t1, t2, fd, q)


# ---------------------------------------------------------------------------- #
#                          position_dispersion_oracle                          #
# ---------------------------------------------------------------------------- #


def position_dispersion_oracle(cfg, tau, fd=None, q=None, outer=None):
    """
    (dx)^2 as the double time integral of <v(t1) v(t2)> over [0, tau]^2.

    The correlation has the additive form c(t1) + c(t2) - c(|t1 - t2|) with
    c(0) = 0, so the same square identity collapses the double integral to
    int_0^tau eta <v(eta) v(eta)> d eta. That single integral runs
    adaptively with the round trip 2x and both stencil images 2x +- 2h
    declared as singular points.

    Args:
        outer (QuadratureSpec): Tolerances of the time integral. The
            correlation is a second difference of quadratures, so its noise
            floor sits near inner_tol / h^2; the default asks for 1e-5
            relative, well above it.

    Returns:
        DispersionValue with the composite error estimate.
    """
    tau = check_measuring_time(tau)
    fd, q = _defaults(cfg, fd, q)
    if outer is None:
        outer = QuadratureSpec(abs_tol=1e-10, rel_tol=1e-5, max_subdivisions=200)
    if cfg.x - fd.h <= 0.0:
        raise SingularLocusError(f"Step h={fd.h} reaches the boundary from x={cfg.x}.")
    if tau == 0.0:
        return DispersionValue(DispersionKind.POSITION_SQUARED, 0.0, provenance='oracle')

    inner_errors = []

    def integrand(etas):
        values = np.empty_like(etas)
        for i, eta in enumerate(etas):
            # on the diagonal the rectangle is the square [0, eta]^2
            value, error = _mixed_difference(lambda s: _square_integral(s, float(eta), q), cfg.x, fd.h)
            value, error = cfg.coupling * value, cfg.coupling * error
            values[i] = eta * value
            inner_errors.append(eta * error)
        return values

    round_trip = 2.0 * cfg.x
    spec = outer.with_singularities(round_trip - 2.0 * fd.h, round_trip, round_trip + 2.0 * fd.h)
    value, error = adaptive_quad(integrand, 0.0, tau, spec)
    # node errors enter with the rule weights, bounded by tau * max
    composite = error + tau * max(inner_errors, default=0.0)
    logger.debug("Position oracle at tau=%s: %s +- %s", tau, value, composite)
    return DispersionValue(
        DispersionKind.POSITION_SQUARED,
        value,
        error=composite,
        provenance='oracle',
    )

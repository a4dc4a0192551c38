"""
Numerical substrate: rising factorials, the 2F2(1,1;3/2,2;z) series and an
adaptive Gauss-Kronrod integrator that splits at declared logarithmic
singularities.
"""

# python imports
import logging
import math
import sys

import numpy as np

# in app imports
from dispersion.conf import dispersion_settings
from dispersion.exceptions import (
    DomainError,
    PochhammerOverflow,
    QuadratureError,
    SeriesNonConvergence,
)
from dispersion.types import QuadratureSpec, SeriesResult


logger = logging.getLogger(__name__)

EPS = sys.float_info.epsilon


# ---------------------------------------------------------------------------- #
#                                  pochhammer                                  #
# ---------------------------------------------------------------------------- #


def pochhammer(a, n):
    """
    Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.

    Raises:
        DomainError: ``n`` is not a nonnegative integer.
        PochhammerOverflow: the product leaves the double range.
    """
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"Pochhammer index must be a nonnegative integer, got {n!r}.")
    product = 1.0
    for k in range(int(n)):
        product *= a + k
        if not math.isfinite(product):
            raise PochhammerOverflow(f"({a})_{n} overflows at factor {k + 1}.")
    return product


# ---------------------------------------------------------------------------- #
#                                CompensatedSum                                #
# ---------------------------------------------------------------------------- #


class CompensatedSum:
    """Neumaier running sum: carries the low-order bits lost by each addition."""

    __slots__ = ('_total', '_carry')

    def __init__(self):
        self._total = 0.0
        self._carry = 0.0

    def add(self, value):
        total = self._total + value
        if abs(self._total) >= abs(value):
            self._carry += (self._total - total) + value
        else:
            self._carry += (value - total) + self._total
        self._total = total

    @property
    def value(self):
        return self._total + self._carry


# ---------------------------------------------------------------------------- #
#                               hyp2f2_1_1_3h_2                                #
# ---------------------------------------------------------------------------- #


def _hyp2f2_term_ratio(n, z):
    # t_{n+1} / t_n for 2F2(1,1;3/2,2;z)
    return (n + 1.0) * z / ((n + 1.5) * (n + 2.0))


def hyp2f2_terms(z):
    """Yield the series terms t_0, t_1, ... of 2F2(1,1;3/2,2;z)."""
    term = 1.0
    n = 0
    while True:
        yield term
        term *= _hyp2f2_term_ratio(n, z)
        n += 1


def hyp2f2_partial_sums(z, n_terms):
    """First ``n_terms`` compensated partial sums of the series."""
    accumulator = CompensatedSum()
    sums = []
    for _, term in zip(range(n_terms), hyp2f2_terms(z)):
        accumulator.add(term)
        sums.append(accumulator.value)
    return sums


def hyp2f2_1_1_3h_2(z, tol=None, max_terms=None):
    """
    Sum 2F2(1,1;3/2,2;z) = sum_n (1)_n (1)_n / ((3/2)_n (2)_n) z^n / n!.

    The function is entire. Summation stops once the geometric tail bound
    |t_n| rho / (1 - rho), rho being the (decreasing) ratio of the next
    terms, drops below ``tol * max(1, |value|)``. The reported error adds a
    cancellation term eps * max|t_n|, which dominates for large negative z.

    Args:
        z (float): Argument. The documented validity envelope is |z| <= 50.
        tol (float): Relative-to-max(1, |value|) target.
        max_terms (int): Term budget.

    Returns:
        SeriesResult

    Raises:
        SeriesNonConvergence: the term budget ran out before the tail bound
            was met.
    """
    if tol is None:
        tol = dispersion_settings.SERIES_TOLERANCE
    if max_terms is None:
        max_terms = dispersion_settings.SERIES_MAX_TERMS
    if not tol > 0.0:
        raise DomainError(f"Series tolerance must be positive, got {tol!r}.")
    z = float(z)
    if abs(z) > dispersion_settings.SERIES_Z_ENVELOPE:
        logger.warning("2F2 evaluated outside its envelope |z| <= %s (z=%s).",
                       dispersion_settings.SERIES_Z_ENVELOPE, z)

    accumulator = CompensatedSum()
    largest = 0.0
    for n, term in enumerate(hyp2f2_terms(z)):
        if n >= max_terms:
            break
        accumulator.add(term)
        largest = max(largest, abs(term))
        rho = abs(_hyp2f2_term_ratio(n, z))
        if rho >= 1.0:
            continue
        value = accumulator.value
        scale = max(1.0, abs(value))
        tail = abs(term) * rho / (1.0 - rho)
        if tail <= 0.5 * tol * scale or tail <= EPS * abs(value):
            error = tail + EPS * largest
            converged = error <= tol * scale
            if not converged:
                logger.warning("2F2 at z=%s lost accuracy to cancellation: error %.3e.", z, error)
            return SeriesResult(value=value, terms_used=n + 1, converged=converged, error_estimate=error)

    partial = SeriesResult(
        value=accumulator.value,
        terms_used=max_terms,
        converged=False,
        error_estimate=math.inf,
    )
    raise SeriesNonConvergence(f"2F2 series at z={z} did not converge in {max_terms} terms.", partial)


# ---------------------------------------------------------------------------- #
#                              gauss_kronrod_panel                             #
# ---------------------------------------------------------------------------- #


# abscissae and weights of the 15-point Kronrod rule and its 7-point Gauss rule
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.0,
    0.129484966168869693270611432679082,
    0.0,
    0.279705391489276667901467771423780,
    0.0,
    0.381830050505118944950369775488975,
    0.0,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:7], _XGK[7:], _XGK[:7][::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:7], _WGK[7:], _WGK[:7][::-1]])
GAUSS_WEIGHTS = np.concatenate([_WG[:7], _WG[7:], _WG[:7][::-1]])

PLAIN, LEFT_SINGULAR, RIGHT_SINGULAR = 'plain', 'left', 'right'


def _panel_integrand(f, a, b, kind):
    """Nodes on [-1, 1] mapped to the panel, with the Jacobian folded in."""
    if kind == PLAIN:
        half = 0.5 * (b - a)
        points = 0.5 * (a + b) + half * NODES
        return lambda: half * np.asarray(f(points), dtype=float)

    # eta = a + L u^2 (or b - L u^2) with u in [0, 1]: a log endpoint turns
    # into u*log(u), which the Kronrod rule resolves under bisection.
    length = b - a
    u = 0.5 * (NODES + 1.0)
    if kind == LEFT_SINGULAR:
        points = a + length * u * u
    else:
        points = b - length * u * u
    jacobian = 0.5 * 2.0 * length * u
    return lambda: jacobian * np.asarray(f(points), dtype=float)


def gauss_kronrod_panel(f, a, b, kind=PLAIN):
    """
    Apply the G7/K15 pair on one panel.

    ``kind`` marks a logarithmic singularity at the left or right endpoint,
    in which case the panel is integrated in the stretched variable u with
    eta - a = (b - a) u^2.

    Returns:
        tuple: (value, error estimate, integral of |f|)
    """
    values = _panel_integrand(f, a, b, kind)()
    if not np.all(np.isfinite(values)):
        raise QuadratureError(f"Integrand is not finite on panel [{a}, {b}].", math.nan, math.inf, 1)
    kronrod = float(np.dot(KRONROD_WEIGHTS, values))
    gauss = float(np.dot(GAUSS_WEIGHTS, values))
    resabs = float(np.dot(KRONROD_WEIGHTS, np.abs(values)))
    # NOTE: ``values`` already carry the half-width, so the mean below is
    # measured in the same units as ``kronrod``.
    resasc = float(np.dot(KRONROD_WEIGHTS, np.abs(values - 0.5 * kronrod)))

    error = abs(kronrod - gauss)
    if resasc != 0.0 and error != 0.0:
        error = resasc * min(1.0, (200.0 * error / resasc) ** 1.5)
    error = max(error, 50.0 * EPS * resabs)
    return kronrod, error, resabs


# ---------------------------------------------------------------------------- #
#                                 adaptive_quad                                #
# ---------------------------------------------------------------------------- #


def _initial_panels(a, b, singularities):
    """Split [a, b] at declared points and tag panels touching them."""
    span = b - a
    merge = 64.0 * EPS * max(abs(a), abs(b), span)
    marks = sorted(p for p in singularities if a - merge <= p <= b + merge)

    left_singular = any(abs(p - a) <= merge for p in marks)
    right_singular = any(abs(p - b) <= merge for p in marks)
    cuts = []
    for p in marks:
        if p - a > merge and b - p > merge and (not cuts or p - cuts[-1] > merge):
            cuts.append(p)

    edges = [a, *cuts, b]
    flags = [left_singular] + [True] * len(cuts) + [right_singular]
    panels = []
    for (lo, hi), (lo_sing, hi_sing) in zip(zip(edges, edges[1:]), zip(flags, flags[1:])):
        if lo_sing and hi_sing:
            mid = 0.5 * (lo + hi)
            panels.append((lo, mid, LEFT_SINGULAR))
            panels.append((mid, hi, RIGHT_SINGULAR))
        elif lo_sing:
            panels.append((lo, hi, LEFT_SINGULAR))
        elif hi_sing:
            panels.append((lo, hi, RIGHT_SINGULAR))
        else:
            panels.append((lo, hi, PLAIN))
    return panels


def _bisect(lo, hi, kind):
    mid = 0.5 * (lo + hi)
    if kind == LEFT_SINGULAR:
        return (lo, mid, LEFT_SINGULAR), (mid, hi, PLAIN)
    if kind == RIGHT_SINGULAR:
        return (lo, mid, PLAIN), (mid, hi, RIGHT_SINGULAR)
    return (lo, mid, PLAIN), (mid, hi, PLAIN)


def adaptive_quad(f, a, b, spec=None):
    """
    Integrate a vectorized ``f`` over [a, b].

    [a, b] is cut at every declared singularity of ``spec``; panels that
    touch one are integrated in a stretched variable that regularizes the
    logarithm. The panel with the largest error is bisected until the summed
    error meets max(abs_tol, rel_tol * |value|). Accuracy below the
    roundoff floor 50 eps * integral(|f|) cannot be requested; once only
    roundoff-limited panels remain the result is accepted.

    Args:
        f (callable): Maps a float ndarray of abscissae to an ndarray.
        a (float): Lower limit.
        b (float): Upper limit, ``a <= b``.
        spec (QuadratureSpec): Tolerances and singular points.

    Returns:
        tuple: (value, error estimate)

    Raises:
        QuadratureError: the panel budget ran out.
    """
    if spec is None:
        spec = QuadratureSpec.from_settings()
    a, b = float(a), float(b)
    if b < a:
        raise DomainError(f"Integration limits must satisfy a <= b, got [{a}, {b}].")
    if a == b:
        return 0.0, 0.0

    panels = []
    for lo, hi, kind in _initial_panels(a, b, spec.singularities):
        panels.append([lo, hi, kind, *gauss_kronrod_panel(f, lo, hi, kind)])

    while True:
        value = math.fsum(p[3] for p in panels)
        error = math.fsum(p[4] for p in panels)
        floor = 50.0 * EPS * math.fsum(p[5] for p in panels)
        if error <= max(spec.tolerance_for(value), floor):
            return value, error

        refinable = [
            i for i, p in enumerate(panels)
            if p[4] > 50.0 * EPS * p[5] * 1.01 and (p[1] - p[0]) > 8.0 * EPS * max(abs(p[0]), abs(p[1]))
        ]
        if not refinable:
            logger.info("Quadrature on [%s, %s] is roundoff limited at error %.3e.", a, b, error)
            return value, error
        if len(panels) >= spec.max_subdivisions:
            logger.warning("Quadrature on [%s, %s] hit %d panels with error %.3e.", a, b, len(panels), error)
            raise QuadratureError(
                f"No convergence on [{a}, {b}] within {spec.max_subdivisions} panels.",
                value, error, len(panels),
            )

        worst = max(refinable, key=lambda i: panels[i][4])
        lo, hi, kind = panels[worst][:3]
        left, right = _bisect(lo, hi, kind)
        panels[worst] = [*left, *gauss_kronrod_panel(f, *left)]
        panels.append([*right, *gauss_kronrod_panel(f, *right)])

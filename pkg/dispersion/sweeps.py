"""
Figure tables and the electromagnetic comparison sweep.

Figure values are dimensionless: dispersions are divided by g^2/m^2 and the
position curve additionally by x^2, so they are computed once for a unit
particle at x = 1 and plotted against tau/x (or sigma/x).
"""

# python imports
import logging
from dataclasses import dataclass, field

# in app imports
from dispersion.conf import dispersion_settings
from dispersion.core import position_dispersion, velocity_dispersion
from dispersion.em import em_velocity_dispersion_parallel, em_velocity_dispersion_perp
from dispersion.exceptions import DomainError
from dispersion.smearing import smeared_curve, well_depth_curve
from dispersion.types import (
    ParticleConfig,
    SmearingConfig,
    SweepGrid,
    SweepVariable,
)
from dispersion.utils import ordered_map


logger = logging.getLogger(__name__)

UNIT_PARTICLE = ParticleConfig(g=1.0, m=1.0, x=1.0)

FIGURES = ('fig1', 'fig2', 'fig3', 'depth')

DEFAULT_GRIDS = {
    'fig1': {'variable': 'tau_over_x', 'start': 0.05, 'stop': 4.0, 'count': 80},
    'fig2': {'variable': 'tau_over_x', 'start': 0.05, 'stop': 4.0, 'count': 80},
    'fig3': {'variable': 'tau_over_x', 'start': 0.1, 'stop': 4.0, 'count': 79},
    'depth': {'variable': 'sigma_over_x', 'start': 0.01, 'stop': 0.2, 'count': 12, 'scale': 'log'},
    'compare_em': {'variable': 'tau_over_x', 'start': 0.0, 'stop': 10.0, 'count': 101},
}

DEFAULT_SIGMAS = (0.2, 0.1, 0.05)


def default_grid(name):
    return SweepGrid(**DEFAULT_GRIDS[name])


# ---------------------------------------------------------------------------- #
#                                  FigureTable                                 #
# ---------------------------------------------------------------------------- #


@dataclass
class FigureTable:
    """
    Rows of one figure.

    Attributes:
        name (str): fig1, fig2, fig3, depth or compare_em.
        columns (tuple): Columns written to CSV, in order.
        records (list): One dict per row. Besides ``columns`` each record
            carries ``regular`` and ``provenance`` for the JSON report.
    """
    name: str
    columns: tuple
    records: list = field(default_factory=list)

    @property
    def singular_count(self):
        return sum(1 for record in self.records if not record['regular'])


def _row_record(row, variable):
    record = {variable.value: row.abscissa, 'value': row.value}
    if row.sigma_over_x is not None:
        record['sigma_over_x'] = row.sigma_over_x
    if row.reference is not None:
        record['asymptote'] = row.reference
    record.update(regular=row.regular, provenance=row.provenance, note=row.note)
    return record


def _check_variable(grid, variable, name):
    if grid.variable is not variable:
        raise DomainError(f"{name} is swept over {variable.value}, not {grid.variable.value}.")


# ---------------------------------------------------------------------------- #
#                                  fig1 / fig2                                 #
# ---------------------------------------------------------------------------- #


def _velocity_record(tau_over_x):
    dispersion = velocity_dispersion(UNIT_PARTICLE, tau_over_x)
    return {
        'tau_over_x': tau_over_x,
        'value': dispersion.value if dispersion.regular else None,
        'regular': dispersion.regular,
        'provenance': dispersion.provenance,
        'note': '' if dispersion.regular else 'singular',
    }


def velocity_curve(grid=None, workers=None):
    """(dv)^2 in units of g^2/m^2 against tau/x; tau = 2x comes out empty."""
    grid = grid or default_grid('fig1')
    _check_variable(grid, SweepVariable.TAU_OVER_X, 'fig1')
    records = ordered_map(_velocity_record, [float(t) for t in grid.values()], workers)
    return FigureTable('fig1', ('tau_over_x', 'value'), records)


def _position_record(tau_over_x):
    dispersion = position_dispersion(UNIT_PARTICLE, tau_over_x)
    return {
        'tau_over_x': tau_over_x,
        'value': dispersion.value,
        'regular': True,
        'provenance': dispersion.provenance,
        'note': '',
    }


def position_curve(grid=None, workers=None):
    """(dx)^2 / x^2 in units of g^2/m^2 against tau/x."""
    grid = grid or default_grid('fig2')
    _check_variable(grid, SweepVariable.TAU_OVER_X, 'fig2')
    records = ordered_map(_position_record, [float(t) for t in grid.values()], workers)
    return FigureTable('fig2', ('tau_over_x', 'value'), records)


# ---------------------------------------------------------------------------- #
#                                 fig3 / depth                                 #
# ---------------------------------------------------------------------------- #


def smeared_curves(sigmas=None, grid=None, n_sigma=None, q=None, workers=None):
    """
    One smeared curve per sigma/x, stacked in the order given.

    Every value is finite, tau = 2x included; points whose quadrature failed
    are the only empty ones.
    """
    grid = grid or default_grid('fig3')
    _check_variable(grid, SweepVariable.TAU_OVER_X, 'fig3')
    sigmas = DEFAULT_SIGMAS if not sigmas else sigmas
    if n_sigma is None:
        n_sigma = dispersion_settings.SMEARING_N_SIGMA

    records = []
    for sigma_over_x in sigmas:
        s = SmearingConfig(sigma=sigma_over_x * UNIT_PARTICLE.x, n_sigma=n_sigma)
        rows = smeared_curve(UNIT_PARTICLE, s, grid, q, workers)
        records.extend(_row_record(row, SweepVariable.TAU_OVER_X) for row in rows)
    return FigureTable('fig3', ('tau_over_x', 'value', 'sigma_over_x'), records)


def well_depth_table(grid=None, n_sigma=None, q=None, workers=None):
    """Smeared value at tau = 2x against sigma/x, next to its logarithmic asymptote."""
    grid = grid or default_grid('depth')
    _check_variable(grid, SweepVariable.SIGMA_OVER_X, 'depth')
    rows = well_depth_curve(UNIT_PARTICLE, grid, q, n_sigma=n_sigma, workers=workers)
    records = [_row_record(row, SweepVariable.SIGMA_OVER_X) for row in rows]
    return FigureTable('depth', ('sigma_over_x', 'value', 'asymptote'), records)


def figure_table(name, grid=None, sigmas=None, n_sigma=None, q=None, workers=None):
    """Dispatch to the table builder of ``name``."""
    if name == 'fig1':
        return velocity_curve(grid, workers)
    if name == 'fig2':
        return position_curve(grid, workers)
    if name == 'fig3':
        return smeared_curves(sigmas, grid, n_sigma, q, workers)
    if name == 'depth':
        return well_depth_table(grid, n_sigma, q, workers)
    raise DomainError(f"Unknown figure {name!r}; choose one of {', '.join(FIGURES)}.")


# ---------------------------------------------------------------------------- #
#                              em_comparison_table                             #
# ---------------------------------------------------------------------------- #


def em_comparison_table(em_cfg, grid=None, workers=None):
    """
    Scalar and electromagnetic velocity dispersions side by side.

    The scalar column uses a coupling g equal to the charge e, so every
    column shares the prefactor e^2/m^2 up to its own numerical factor.
    Values are absolute, not normalized. The shared light-cone point
    tau = 2x is empty in every column.
    """
    grid = grid or default_grid('compare_em')
    _check_variable(grid, SweepVariable.TAU_OVER_X, 'compare_em')
    scalar_cfg = ParticleConfig(g=em_cfg.e, m=em_cfg.m, x=em_cfg.x)

    def record(tau_over_x):
        tau = tau_over_x * em_cfg.x
        columns = {
            'scalar_velocity': velocity_dispersion(scalar_cfg, tau),
            'em_perp': em_velocity_dispersion_perp(em_cfg, tau),
            'em_parallel': em_velocity_dispersion_parallel(em_cfg, tau),
        }
        regular = all(d.regular for d in columns.values())
        row = {'tau_over_x': tau_over_x}
        row.update((key, d.value if d.regular else None) for key, d in columns.items())
        row.update(regular=regular, provenance='closed-form', note='' if regular else 'singular')
        return row

    records = ordered_map(record, [float(t) for t in grid.values()], workers)
    return FigureTable(
        'compare_em',
        ('tau_over_x', 'scalar_velocity', 'em_perp', 'em_parallel'),
        records,
    )

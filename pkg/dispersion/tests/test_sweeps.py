import json
import math

import pytest

from dispersion.exceptions import DomainError
from dispersion.reports import (
    RunReport,
    format_cell,
    jsonable,
    render_csv,
    render_json,
    write_output,
)
from dispersion.sweeps import (
    DEFAULT_GRIDS,
    em_comparison_table,
    figure_table,
    position_curve,
    velocity_curve,
    well_depth_table,
)
from dispersion.types import DispersionKind, EmParticleConfig, SweepGrid
from dispersion.utils import ordered_map, parse_key_values


# ------------------------------ tau_grid ------------------------------------ #


@pytest.fixture
def tau_grid():
    # 1, 1.5, 2, 2.5, 3: hits the round trip exactly
    return SweepGrid('tau_over_x', 1.0, 3.0, 5)


# ------------------------------ test_fig1_fig2 ------------------------------ #


def test_velocity_curve_leaves_round_trip_empty(tau_grid):
    table = velocity_curve(tau_grid)
    assert table.columns == ('tau_over_x', 'value')
    assert [record['tau_over_x'] for record in table.records] == [1.0, 1.5, 2.0, 2.5, 3.0]
    assert table.records[2]['value'] is None
    assert table.records[2]['note'] == 'singular'
    assert table.singular_count == 1
    assert table.records[0]['value'] == pytest.approx(-math.log(16.0 / 9.0) / (4.0 * math.pi))


def test_position_curve_is_finite_at_round_trip(tau_grid):
    table = position_curve(tau_grid)
    assert table.singular_count == 0
    assert table.records[2]['value'] == pytest.approx(-1.0 / math.pi)


def test_default_grids():
    table = figure_table('fig2')
    assert len(table.records) == DEFAULT_GRIDS['fig2']['count']
    assert table.records[0]['tau_over_x'] == pytest.approx(0.05)
    assert table.records[-1]['tau_over_x'] == pytest.approx(4.0)


# ------------------------------- test_fig3 ---------------------------------- #


def test_smeared_curves_are_stacked(tau_grid):
    table = figure_table('fig3', grid=tau_grid, sigmas=[0.1, 0.05])
    assert table.columns == ('tau_over_x', 'value', 'sigma_over_x')
    assert [record['sigma_over_x'] for record in table.records] == [0.1] * 5 + [0.05] * 5
    assert table.singular_count == 0
    assert all(math.isfinite(record['value']) for record in table.records)
    # the narrower width digs the deeper well at tau = 2x
    assert table.records[7]['value'] < table.records[2]['value'] < 0.0


def test_well_depth_table():
    table = well_depth_table(SweepGrid('sigma_over_x', 0.02, 0.05, 2))
    assert table.columns == ('sigma_over_x', 'value', 'asymptote')
    for record in table.records:
        assert record['value'] == pytest.approx(record['asymptote'], rel=0.2)


def test_figure_table_checks():
    with pytest.raises(DomainError):
        figure_table('fig4')
    with pytest.raises(DomainError):
        figure_table('fig1', grid=SweepGrid('sigma_over_x', 0.1, 0.2, 3))
    with pytest.raises(DomainError):
        figure_table('depth', grid=SweepGrid('tau_over_x', 0.1, 0.2, 3))


# --------------------------- test_em_comparison ----------------------------- #


def test_em_comparison_table():
    table = em_comparison_table(EmParticleConfig(e=1.0, m=1.0, x=1.0))
    assert table.columns == ('tau_over_x', 'scalar_velocity', 'em_perp', 'em_parallel')
    assert len(table.records) == 101
    assert table.records[0]['scalar_velocity'] == 0.0
    round_trip = table.records[20]
    assert round_trip['tau_over_x'] == 2.0
    assert round_trip['scalar_velocity'] is None
    assert round_trip['em_perp'] is None
    assert round_trip['em_parallel'] is None
    assert table.singular_count == 1
    assert table.records[10]['em_perp'] == pytest.approx(math.log(9.0) / (32.0 * math.pi ** 2))


def test_em_comparison_uses_absolute_units():
    far = em_comparison_table(EmParticleConfig(e=1.0, m=1.0, x=2.0), SweepGrid('tau_over_x', 0.5, 1.0, 2))
    near = em_comparison_table(EmParticleConfig(e=1.0, m=1.0, x=1.0), SweepGrid('tau_over_x', 0.5, 1.0, 2))
    for a, b in zip(far.records, near.records):
        assert a['em_perp'] == pytest.approx(b['em_perp'] / 4.0)
        assert a['scalar_velocity'] == pytest.approx(b['scalar_velocity'])


# ------------------------------- test_reports ------------------------------- #


@pytest.mark.parametrize("value, expected", [
    (None, ''),
    (True, 'true'),
    (False, 'false'),
    (math.inf, ''),
    (math.nan, ''),
    (0.1, '0.1'),
    (-1.0 / 3.0, '-0.3333333333333333'),
    (12, '12'),
    ('smeared', 'smeared'),
])
def test_format_cell(value, expected):
    assert format_cell(value) == expected


def test_render_csv_is_deterministic(tau_grid):
    first = velocity_curve(tau_grid)
    second = velocity_curve(tau_grid, workers=1)
    text = render_csv(first.columns, first.records)
    assert text == render_csv(second.columns, second.records)
    lines = text.split('\n')
    assert lines[0] == 'tau_over_x,value'
    assert lines[3] == '2.0,'
    assert text.endswith('\n') and '\r' not in text
    assert float(lines[1].split(',')[1]) == first.records[0]['value']


def test_jsonable():
    assert jsonable({'a': [math.inf, 1.0, (2.0, math.nan)]}) == {'a': [None, 1.0, [2.0, None]]}
    assert jsonable(DispersionKind.VELOCITY_SQUARED) == 'velocity_squared'
    assert jsonable(SweepGrid('tau_over_x', 0.0, 1.0, 2))['variable'] == 'tau_over_x'


def test_run_report_json():
    report = RunReport(command='figure fig1', params={'name': 'fig1'})
    with report.timed():
        report.results = [{'tau_over_x': 2.0, 'value': None, 'provenance': 'closed-form'}]
    report.summary = {'rows': 1}
    payload = json.loads(render_json(report))
    assert set(payload) == {'params', 'results', 'report'}
    assert payload['report']['command'] == 'figure fig1'
    assert payload['report']['duration'] >= 0.0
    assert payload['results'][0]['value'] is None
    assert render_json(report).endswith('}\n')


def test_write_output(tmp_path):
    path = tmp_path / 'table.csv'
    write_output('a,b\n1,2\n', path=str(path))
    assert path.read_bytes() == b'a,b\n1,2\n'


# -------------------------------- test_utils -------------------------------- #


@pytest.mark.parametrize("workers", [1, 4])
def test_ordered_map_keeps_order(workers):
    assert ordered_map(lambda v: v * v, range(20), workers) == [v * v for v in range(20)]


def test_parse_key_values():
    text = "# defaults\ng = 0.1\n\nallow-singular=true\ngrid=0:4:9\n"
    assert parse_key_values(text) == {'g': '0.1', 'allow_singular': 'true', 'grid': '0:4:9'}
    with pytest.raises(ValueError):
        parse_key_values("g 0.1")

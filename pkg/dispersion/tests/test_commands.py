import json
import math
from io import StringIO

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from dispersion.management.base import EXIT_SINGULAR, EXIT_USAGE, EXIT_VERIFICATION_FAILED


def run(*args, **options):
    out = StringIO()
    call_command(*args, stdout=out, **options)
    return out.getvalue()


def results_by_quantity(text):
    return {result['quantity']: result for result in json.loads(text)['results']}


# --------------------------------- test_eval -------------------------------- #


def test_eval_json():
    payload = json.loads(run('eval', tau=1.0))
    assert set(payload) == {'params', 'results', 'report'}
    assert payload['report']['command'] == 'eval'
    results = {result['quantity']: result for result in payload['results']}
    assert results['velocity_dispersion']['value'] == pytest.approx(-0.045786, abs=5e-7)
    assert results['velocity_dispersion']['provenance'] == 'closed-form'
    assert results['subvacuum_class']['value'] == 'subvacuum'


def test_eval_round_trip_exits_singular():
    with pytest.raises(CommandError) as excinfo:
        run('eval', tau=2.0)
    assert excinfo.value.returncode == EXIT_SINGULAR


def test_eval_round_trip_allowed():
    results = results_by_quantity(run('eval', tau=2.0, allow_singular=True))
    assert results['velocity_dispersion']['regular'] is False
    assert results['velocity_dispersion']['value'] is None
    assert results['position_dispersion']['value'] == pytest.approx(-1.0 / math.pi)


@pytest.mark.parametrize("options", [{'tau': 1.0, 'm': 0.0}, {'tau': -1.0}, {}])
def test_eval_invalid_arguments(options):
    with pytest.raises(CommandError) as excinfo:
        run('eval', **options)
    assert excinfo.value.returncode == EXIT_USAGE


def test_eval_threshold_and_sigma():
    results = results_by_quantity(run('eval', g=0.1, tau=10.0, threshold=0.16, sigma=0.1))
    assert results['validity_metric']['value'] == pytest.approx(0.1632, abs=5e-4)
    assert results['validity_holds']['value'] is False
    assert results['validity_horizon']['value'] == pytest.approx(10.0, rel=0.05)
    assert results['smeared_velocity_dispersion']['provenance'] == 'smeared'


def test_eval_without_coupling():
    results = results_by_quantity(run('eval', g=0.0, tau=5.0))
    for quantity in ('velocity_dispersion', 'position_dispersion', 'validity_metric'):
        assert results[quantity]['value'] == 0.0


def test_eval_text():
    text = run('eval', tau=2.0, allow_singular=True, format='text')
    assert 'velocity_dispersion' in text
    assert 'singular' in text


def test_eval_config_file(tmp_path):
    path = tmp_path / 'eval.cfg'
    path.write_text("g = 2\ntau = 1\nformat = json\n", encoding='utf-8')
    from_file = results_by_quantity(run('eval', config=str(path)))
    overridden = results_by_quantity(run('eval', config=str(path), g=1.0))
    assert from_file['velocity_dispersion']['value'] == pytest.approx(
        4.0 * overridden['velocity_dispersion']['value']
    )


def test_eval_bad_config_file(tmp_path):
    with pytest.raises(CommandError) as excinfo:
        run('eval', config=str(tmp_path / 'absent.cfg'))
    assert excinfo.value.returncode == EXIT_USAGE


# -------------------------------- test_figure ------------------------------- #


def test_figure_csv():
    text = run('figure', 'fig1', grid='1:3:5')
    lines = text.splitlines()
    assert lines[0] == 'tau_over_x,value'
    assert len(lines) == 6
    assert lines[3] == '2.0,'


def test_figure_is_byte_identical():
    assert run('figure', 'fig2') == run('figure', 'fig2')


def test_figure_out_and_json(tmp_path):
    path = tmp_path / 'fig3.json'
    assert run('figure', 'fig3', sigma=[0.1], grid='1:3:3', format='json', out=str(path)) == ''
    payload = json.loads(path.read_text(encoding='utf-8'))
    assert payload['report']['command'] == 'figure fig3'
    assert payload['report']['summary'] == {'rows': 3, 'empty': 0}
    assert all(row['provenance'] == 'smeared' for row in payload['results'])


def test_figure_sigma_relative_to_x():
    relative = run('figure', 'fig3', sigma=[0.1], grid='1:3:3')
    scaled = run('figure', 'fig3', x=2.0, sigma=[0.2], grid='1:3:3')
    assert relative == scaled


@pytest.mark.parametrize("args, options", [
    (('figure', 'fig3'), {}),
    (('figure', 'fig1'), {'grid': '3:1:5'}),
    (('figure', 'fig3'), {'sigma': [-0.1]}),
])
def test_figure_invalid_arguments(args, options):
    with pytest.raises(CommandError) as excinfo:
        run(*args, **options)
    assert excinfo.value.returncode == EXIT_USAGE


# ------------------------------ test_compare_em ----------------------------- #


def test_compare_em_csv():
    lines = run('compare_em').splitlines()
    assert lines[0] == 'tau_over_x,scalar_velocity,em_perp,em_parallel'
    assert len(lines) == 102
    assert lines[21] == '2.0,,,'


def test_compare_em_json():
    payload = json.loads(run('compare_em', grid='0.5:1:2', e=2.0, format='json'))
    assert payload['report']['summary'] == {'rows': 2, 'empty': 0}
    assert payload['params']['grid'] == '0.5:1:2'
    assert payload['results'][1]['em_perp'] == pytest.approx(4.0 * math.log(9.0) / (32.0 * math.pi ** 2))


# -------------------------------- test_verify ------------------------------- #


def test_verify_fast_passes():
    text = run('verify', fast=True)
    assert 'FAIL' not in text
    assert 'checks passed' in text


def test_verify_default_suite():
    payload = json.loads(run('verify', format='json'))
    summary = payload['report']['summary']
    assert summary['failed'] == []
    names = [result['name'] for result in payload['results']]
    for tau in (0.25, 0.5, 1.0, 1.5, 2.5, 3.0, 4.0):
        assert f"oracle_velocity[tau/x={tau}]" in names
        assert f"oracle_position[tau/x={tau}]" in names
    assert 'hyp2f2_regression' in names
    assert summary['passed'] == summary['total'] == len(names)


def test_verify_canary_fails():
    out = StringIO()
    with pytest.raises(CommandError) as excinfo:
        call_command('verify', fast=True, perturbation=0.01, format='json', stdout=out)
    assert excinfo.value.returncode == EXIT_VERIFICATION_FAILED
    payload = json.loads(out.getvalue())
    failed = payload['report']['summary']['failed']
    assert any(name.startswith('oracle_velocity') for name in failed)


def test_verify_rejects_round_trip_grid():
    with pytest.raises(CommandError) as excinfo:
        run('verify', grid='1,2')
    assert excinfo.value.returncode == EXIT_USAGE

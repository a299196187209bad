import json

import pytest
from click.testing import CliRunner

from app import create_cli


@pytest.fixture
def cli():
    return create_cli()


@pytest.fixture
def runner():
    return CliRunner()


def row_for(output, label):
    for line in output.splitlines():
        if line.startswith(label + ' '):
            return line.split()
    raise AssertionError(f'{label} not in output')


def test_rank_nuclear_fixture(runner, cli):
    result = runner.invoke(cli, ['rank', '--fixture', 'nuclear', '--rho', '0.8'])
    assert result.exit_code == 0, result.output
    assert 'Grey relational grades' in result.output
    assert row_for(result.output, 'Wells')[-1] == '1'
    assert row_for(result.output, 'Anaheim')[-1] == '12'


def test_rank_unbounded_variant(runner, cli):
    result = runner.invoke(cli, ['rank', '--fixture', 'table2-intervals', '--rho', '0.8',
                                 '--variant', 'crs-unbounded'])
    assert result.exit_code == 0, result.output
    assert row_for(result.output, 'Rock')[-1] == '1'
    assert row_for(result.output, 'Wells')[-1] == '2'


def test_rank_audit_lists_intermediate_tables(runner, cli):
    result = runner.invoke(cli, ['rank', '--fixture', 'nuclear', '--rho', '0.8', '--audit', '--slacks'])
    assert result.exit_code == 0, result.output
    for title in ('Dataset attributes', 'Alpha-cut intervals', 'Comparability matrix', 'Reference sequence',
                  'Grey relational coefficients (rho = 0.8)', 'AHP priorities',
                  'Optimistic weights', 'Pessimistic weights', 'Slack diagnostics'):
        assert title in result.output


def test_bounded_run_needs_priorities(runner, cli):
    result = runner.invoke(cli, ['rank', '--fixture', 'table2-intervals'])
    assert result.exit_code == 2
    assert 'bounded-vrs requires' in result.output


def test_computed_priorities_from_ahp_fixture(runner, cli):
    result = runner.invoke(cli, ['rank', '--fixture', 'table2-intervals', '--ahp', 'table3-ahp',
                                 '--rho', '0.8'])
    assert result.exit_code == 0, result.output
    assert row_for(result.output, 'Wells')[-1] == '1'


def test_ahp_command_reports_consistency(runner, cli):
    result = runner.invoke(cli, ['ahp', '--published'])
    assert result.exit_code == 0, result.output
    assert 'C.R. =' in result.output
    assert 'lambda_max =' in result.output
    assert 'Published' in result.output
    assert row_for(result.output, 'cost')[-1] == '0.1310'


def test_ahp_json_payload(runner, cli):
    result = runner.invoke(cli, ['ahp', '--format', 'json'])
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert payload['priorities']['labels'] == ['cost', 'lives lost', 'risk', 'civic']
    assert payload['priorities']['consistency_ratio'] <= 0.02
    assert payload['published'] is None


def test_gra_command(runner, cli):
    result = runner.invoke(cli, ['gra', '--fixture', 'nuclear', '--rho', '0.8'])
    assert result.exit_code == 0, result.output
    assert 'Grey relational coefficients (rho = 0.8)' in result.output
    assert 'Weighted grade' in result.output
    assert 'delta_max = 0.9500' in result.output
    assert row_for(result.output, 'Newark')[1:5] == ['0.4444', '0.4444', '1.0000', '1.0000']


def test_gra_without_priorities_skips_grades(runner, cli):
    result = runner.invoke(cli, ['gra', '--fixture', 'table2-intervals', '--format', 'csv'])
    assert result.exit_code == 0, result.output
    assert 'Weighted grade' not in result.output
    assert '# Grey relational coefficients (rho = 0.5)' in result.output


def test_lp_command(runner, cli, tmp_path):
    path = tmp_path / 'box.lp'
    path.write_text('max\n3 2\n1 1 <= 4\n1 3 <= 9\n1 0 <= 3\n', encoding='utf-8')
    result = runner.invoke(cli, ['lp', str(path)])
    assert result.exit_code == 0, result.output
    assert 'status: optimal' in result.output
    assert 'objective: 11.0000' in result.output
    assert 'Shadow prices' in result.output


def test_infeasible_lp_exits_with_numeric_code(runner, cli, tmp_path):
    path = tmp_path / 'empty.lp'
    path.write_text('max\n1 1\n1 1 <= 1\n1 1 >= 2\n', encoding='utf-8')
    result = runner.invoke(cli, ['lp', str(path)])
    assert result.exit_code == 3
    assert 'status: infeasible' in result.output
    assert 'error [lp]' in result.output


def test_lp_parse_error_exits_with_validation_code(runner, cli, tmp_path):
    path = tmp_path / 'bad.lp'
    path.write_text('max\n1 1\n1 x <= 4\n', encoding='utf-8')
    result = runner.invoke(cli, ['lp', str(path)])
    assert result.exit_code == 2
    assert 'line 3, column 3' in result.output


def test_alpha_out_of_range_is_a_validation_error(runner, cli):
    result = runner.invoke(cli, ['rank', '--fixture', 'nuclear', '--alpha', '1.5'])
    assert result.exit_code == 2
    assert result.output.startswith('error')


def test_ragged_dataset_is_a_validation_error(runner, cli, tmp_path):
    path = tmp_path / 'ragged.csv'
    path.write_text('alternative,a,b\nfirst,1,2\nsecond,3\n', encoding='utf-8')
    result = runner.invoke(cli, ['rank', '--dataset', str(path), '--variant', 'crs-unbounded'])
    assert result.exit_code == 2
    assert 'error [load]' in result.output
    assert "'second'" in result.output


def test_rho_zero_is_a_numeric_error(runner, cli):
    result = runner.invoke(cli, ['rank', '--fixture', 'nuclear', '--rho', '0'])
    assert result.exit_code == 3
    assert 'error [coefficients]' in result.output


def test_missing_dataset_is_an_io_error(runner, cli, tmp_path):
    result = runner.invoke(cli, ['rank', '--dataset', str(tmp_path / 'absent.csv'),
                                 '--variant', 'crs-unbounded'])
    assert result.exit_code == 4
    assert 'file not found' in result.output


def test_conflicting_sources_are_usage_errors(runner, cli):
    both = runner.invoke(cli, ['rank', '--fixture', 'nuclear', '--dataset', 'x.csv'])
    assert both.exit_code == 2
    neither = runner.invoke(cli, ['rank'])
    assert neither.exit_code == 2
    priorities = runner.invoke(cli, ['rank', '--fixture', 'nuclear', '--ahp', 'table3-ahp',
                                     '--weights', '0.25,0.25,0.25,0.25'])
    assert priorities.exit_code == 2


def test_json_report_reloads_as_a_dataset(runner, cli, tmp_path):
    first = tmp_path / 'report.json'
    second = tmp_path / 'again.json'
    result = runner.invoke(cli, ['rank', '--fixture', 'nuclear', '--rho', '0.8', '--format', 'json',
                                 '--output', str(first)])
    assert result.exit_code == 0, result.output
    result = runner.invoke(cli, ['rank', '--dataset', str(first), '--weights', '0.131,0.545,0.275,0.05',
                                 '--rho', '0.8', '--format', 'json', '--output', str(second)])
    assert result.exit_code == 0, result.output
    assert second.read_bytes() == first.read_bytes()
    payload = json.loads(first.read_text(encoding='utf-8'))
    assert payload['tool'] == 'greyrank'
    assert payload['config']['rho'] == 0.8
    wells = next(g for g in payload['grades'] if g['alternative'] == 'Wells')
    assert wells['rank'] == 1
    assert wells['pessimistic']['grade'] == pytest.approx(1.4038, abs=5e-4)


def test_pdf_needs_an_output_file(runner, cli, tmp_path):
    result = runner.invoke(cli, ['rank', '--fixture', 'nuclear', '--format', 'pdf'])
    assert result.exit_code == 2
    assert '--output' in result.output
    path = tmp_path / 'report.pdf'
    result = runner.invoke(cli, ['rank', '--fixture', 'nuclear', '--format', 'pdf', '-o', str(path)])
    assert result.exit_code == 0, result.output
    assert path.read_bytes().startswith(b'%PDF')


def test_beta_sweep(runner, cli):
    result = runner.invoke(cli, ['sweep', 'beta', '--fixture', 'nuclear', '--rho', '0.8',
                                 '--values', '0,1', '--format', 'csv'])
    assert result.exit_code == 0, result.output
    assert '# Compromise grade by beta' in result.output
    assert '# Rank by beta' in result.output


def test_rho_sweep(runner, cli):
    result = runner.invoke(cli, ['sweep', 'rho', '--fixture', 'nuclear', '--values', '0.5,0.8'])
    assert result.exit_code == 0, result.output
    assert 'Rank by rho' in result.output
    assert 'pairwise rank agreement' in result.output


def test_sweep_rejects_bad_values(runner, cli):
    result = runner.invoke(cli, ['sweep', 'beta', '--fixture', 'nuclear', '--values', '0,half'])
    assert result.exit_code == 2


def test_version(runner, cli):
    result = runner.invoke(cli, ['--version'])
    assert result.exit_code == 0
    assert result.output.strip() == 'greyrank 0.1.0'


def test_verbose_flag_is_accepted(runner, cli):
    result = runner.invoke(cli, ['--verbose', 'ahp'])
    assert result.exit_code == 0, result.output
    assert 'AHP priorities' in result.output


def test_malformed_json_dataset_is_a_validation_error(runner, cli, tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text(json.dumps({'attributes': [{'orientation': 'desirable'}], 'alternatives': ['a']}),
                    encoding='utf-8')
    result = runner.invoke(cli, ['rank', '--dataset', str(path), '--variant', 'crs-unbounded'])
    assert result.exit_code == 2
    assert 'error [load]' in result.output
    assert 'attribute 1' in result.output

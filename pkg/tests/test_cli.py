"""Tests for the command-line interface."""
import csv
import json
import os

import pytest
from click.testing import CliRunner

from iaqc.cli import cli
from iaqc.cli.utils import parse_grid
from iaqc.errors import ConfigError

SIPHON_SETTINGS = ('--set', 'adversary.strategy=siphon', '--set', 'adversary.fraction=0.0',
                   '--set', 'round.source_intensity=50')


def _read_csv(path):
    with open(path, newline='') as f:
        return list(csv.DictReader(f))


class TestGrid:

    def test_range_is_inclusive(self) -> None:
        grid = parse_grid('0:0.2:0.01')
        assert len(grid) == 21
        assert grid[-1] == 0.2
        assert grid[3] == 0.03

    def test_list(self) -> None:
        assert parse_grid('2,4,8') == (2.0, 4.0, 8.0)

    @pytest.mark.parametrize('text', ['0:0.2', '', 'a,b', '0:1:0', '1:0:0.1'])
    def test_malformed(self, text) -> None:
        with pytest.raises(ConfigError):
            parse_grid(text)


class TestRunCommand:

    def test_honest_run(self, runner) -> None:
        cli_runner, out = runner
        result = cli_runner.invoke(cli, ['--seed', '7', '--out', out, 'run',
                                         '--set', 'session.rounds=40', '--set', 'round.source_intensity=60'])
        assert result.exit_code == 0, result.output
        assert 'detection_rate: 0' in result.output
        assert 'bit_error_rate_undetected: 0' in result.output
        for name in ('stats.json', 'transcripts.csv', 'manifest.json'):
            assert os.path.exists(os.path.join(out, name))
        assert len(_read_csv(os.path.join(out, 'transcripts.csv'))) == 40
        manifest = json.load(open(os.path.join(out, 'manifest.json')))
        assert manifest['seed'] == 7
        assert manifest['config']['session']['rounds'] == 40

    def test_out_of_range_exits_2(self, runner) -> None:
        cli_runner, out = runner
        result = cli_runner.invoke(cli, ['--out', out, 'run', '--set', 'round.tap_fraction=1.5'])
        assert result.exit_code == 2
        assert 'tap_fraction' in result.output

    def test_non_numeric_value_exits_2(self, runner) -> None:
        cli_runner, out = runner
        result = cli_runner.invoke(cli, ['--out', out, 'run', '--set', 'round.tap_fraction=abc'])
        assert result.exit_code == 2
        assert 'tap_fraction' in result.output

    def test_undecodable_config_exits_2(self, runner, tmp_path) -> None:
        cli_runner, out = runner
        path = tmp_path / 'run.yaml'
        path.write_bytes(b'\xff\xfe\x00\x01')
        result = cli_runner.invoke(cli, ['--out', out, 'run', '--config', str(path)])
        assert result.exit_code == 2

    def test_missing_config_exits_3(self, runner, tmp_path) -> None:
        cli_runner, out = runner
        result = cli_runner.invoke(cli, ['--out', out, 'run', '--config', str(tmp_path / 'nope.yaml')])
        assert result.exit_code == 3

    def test_unknown_config_key_exits_2(self, runner, tmp_path) -> None:
        cli_runner, out = runner
        path = tmp_path / 'run.yaml'
        path.write_text('round:\n  tap_fracton: 0.1\n')
        result = cli_runner.invoke(cli, ['--out', out, 'run', '--config', str(path)])
        assert result.exit_code == 2
        assert 'tap_fracton' in result.output

    def test_same_seed_byte_identical(self, tmp_path) -> None:
        outputs = []
        for name in ('a', 'b'):
            out = str(tmp_path / name)
            result = CliRunner().invoke(cli, ['--seed', '123', '--out', out, '--threads', '2', 'run',
                                              '--set', 'session.rounds=30', '--set', 'session.angle_policy=fresh',
                                              *SIPHON_SETTINGS[:2], '--set', 'adversary.fraction=0.01'])
            assert result.exit_code == 0, result.output
            outputs.append([open(os.path.join(out, n), 'rb').read() for n in ('stats.json', 'transcripts.csv')])
        assert outputs[0] == outputs[1]

    def test_expected_value_mode_flag(self, runner) -> None:
        cli_runner, out = runner
        result = cli_runner.invoke(cli, ['--seed', '1', '--out', out, '--mode', 'expected', 'run',
                                         '--set', 'session.rounds=5'])
        assert result.exit_code == 0, result.output
        row = _read_csv(os.path.join(out, 'transcripts.csv'))[0]
        assert float(row['bob_first_observed']) == 100.0
        assert row['intensity_alarm'] == '0'


class TestSweepCommand:

    def test_siphon_grid_rows(self, runner) -> None:
        cli_runner, out = runner
        result = cli_runner.invoke(cli, ['--seed', '3', '--out', out, 'sweep', *SIPHON_SETTINGS,
                                         '--sweep', 'g', '--grid', '0:0.2:0.01', '--rounds', '5'])
        assert result.exit_code == 0, result.output
        rows = _read_csv(os.path.join(out, 'sweep.csv'))
        assert len(rows) == 21
        assert {'value', 'detection_rate', 'detection_rate_halfwidth'} <= set(rows[0])

    def test_angle_set_grid_has_bounds(self, runner) -> None:
        cli_runner, out = runner
        result = cli_runner.invoke(cli, ['--seed', '3', '--out', out, 'sweep', '--sweep', 's',
                                         '--grid', '2,4,8', '--rounds', '5'])
        assert result.exit_code == 0, result.output
        rows = _read_csv(os.path.join(out, 'sweep.csv'))
        assert [r['min_photons_info_bound'] for r in rows] == ['3', '6', '9']
        assert [r['bank_eve_photons'] for r in rows] == ['6', '12', '24']

    def test_malformed_grid_exits_2(self, runner) -> None:
        cli_runner, out = runner
        result = cli_runner.invoke(cli, ['--out', out, 'sweep', '--sweep', 'g', '--grid', '0:0.2'])
        assert result.exit_code == 2


class TestTable1Command:

    def test_ledger_with_eve(self, runner) -> None:
        cli_runner, out = runner
        result = cli_runner.invoke(cli, ['--seed', '5', 'table1'])
        assert result.exit_code == 0, result.output
        bottom = [line for line in result.output.splitlines() if line.startswith('bob measures')][0]
        assert bottom.split('|')[1].split() == ['X', 'X', 'X', 'A⁻¹(E)', 'B⁻¹A⁻¹(E)', 'B⁻¹(E)']

    def test_ledger_without_eve(self, runner) -> None:
        cli_runner, out = runner
        result = cli_runner.invoke(cli, ['--seed', '5', 'table1', '--no-eve'])
        bottom = [line for line in result.output.splitlines() if line.startswith('bob measures')][0]
        assert bottom.split('|')[1].split() == ['X'] * 6
        assert 'aligned, bit 0' in result.output

    def test_same_seed_same_output(self, runner) -> None:
        cli_runner, _ = runner
        first = cli_runner.invoke(cli, ['--seed', '9', 'table1']).output
        assert cli_runner.invoke(cli, ['--seed', '9', 'table1']).output == first


class TestBoundsCommand:

    def test_published_values(self, runner) -> None:
        cli_runner, _ = runner
        result = cli_runner.invoke(cli, ['bounds', '--s', '4', '--m', '10'])
        assert result.exit_code == 0
        assert 'min_photons_info_bound(s=4): 6' in result.output
        assert '(12, 24)' in result.output
        assert '(30, 60)' in result.output

    @pytest.mark.parametrize('s, info, bank', [(2, 3, (6, 12)), (4, 6, (12, 24)), (8, 9, (24, 48)),
                                               (10, 10, (30, 60))])
    @pytest.mark.parametrize('m, siphon', [(1, (3, 6)), (10, (30, 60)), (100, (300, 600))])
    def test_closed_forms(self, runner, s, info, bank, m, siphon) -> None:
        cli_runner, _ = runner
        result = cli_runner.invoke(cli, ['bounds', '--s', str(s), '--m', str(m)])
        assert result.exit_code == 0
        assert f'min_photons_info_bound(s={s}): {info}' in result.output
        assert f'detector_bank_budget(s={s}): {bank}' in result.output
        assert f'siphon_budget(m={m}): {siphon}' in result.output

    def test_small_values(self, runner) -> None:
        cli_runner, _ = runner
        result = cli_runner.invoke(cli, ['bounds', '--s', '2', '--m', '1'])
        assert ': 3' in result.output and '(6, 12)' in result.output and '(3, 6)' in result.output

    def test_s_below_two_exits_2(self, runner) -> None:
        cli_runner, _ = runner
        assert cli_runner.invoke(cli, ['bounds', '--s', '1']).exit_code == 2


class TestIdentifyCommand:

    def test_writes_accuracy_table(self, runner) -> None:
        cli_runner, out = runner
        result = cli_runner.invoke(cli, ['--seed', '2', '--out', out, 'identify', '--s', '4',
                                         '--trials', '200', '--max-m', '16'])
        assert result.exit_code == 0, result.output
        rows = _read_csv(os.path.join(out, 'identify.csv'))
        assert float(rows[-1]['accuracy']) >= 0.95

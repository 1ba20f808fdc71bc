import json
import logging
from os.path import exists
from os.path import join
from tempfile import TemporaryDirectory
from unittest import TestCase
from unittest.mock import patch

from click.testing import CliRunner

from pyrwre.cli.cli import cli
from pyrwre.errors import InsufficientDataError
from pyrwre.logging import logger

DIRECTION = {
    'schema_version': 1,
    'kind': 'direction',
    'environment': {'model': 'constant', 'kernel': [1, 0, 0, 0]},
    'times': [2, 4],
    'replicas': 3,
}
CHUNG = {
    'schema_version': 1,
    'kind': 'oracle-chung',
    'environment': {'model': 'column_e1'},
    'oracle': {'p_values': [0.5] * 6, 'a': -3, 'b': 4},
}


class TestCli(TestCase):
    def setUp(self) -> None:
        self.tmp = TemporaryDirectory()
        self.runner = CliRunner()

    def tearDown(self) -> None:
        self.tmp.cleanup()

    def write_config(self, data: dict) -> str:
        path = join(self.tmp.name, 'config.json')
        with open(path, 'w') as f:
            json.dump(data, f)
        return path

    def test_estimate(self) -> None:
        out = join(self.tmp.name, 'out')
        result = self.runner.invoke(cli, ['estimate', '-c', self.write_config(DIRECTION), '-o', out, '-s', '5'])
        self.assertEqual(0, result.exit_code, result.output)
        self.assertTrue(exists(join(out, 'direction.csv')))
        with open(join(out, 'summary.json')) as f:
            self.assertEqual(5, json.load(f)['seed'])

        result = self.runner.invoke(cli, ['report', '-o', out])
        self.assertEqual(0, result.exit_code, result.output)

    def test_oracle(self) -> None:
        out = join(self.tmp.name, 'out')
        result = self.runner.invoke(cli, ['oracle', '-c', self.write_config(CHUNG), '-o', out, '-w', '2'])
        self.assertEqual(0, result.exit_code, result.output)
        with open(join(out, 'summary.json')) as f:
            self.assertAlmostEqual(4 / 7, json.load(f)['results']['oracle']['value'], delta=1e-15)

    def test_verbose(self) -> None:
        out = join(self.tmp.name, 'out')
        try:
            result = self.runner.invoke(cli, ['oracle', '-c', self.write_config(CHUNG), '-o', out, '-v'])
            self.assertEqual(0, result.exit_code, result.output)
            self.assertEqual(logging.DEBUG, logger.level)
        finally:
            logger.setLevel(logging.NOTSET)

    def test_verb_mismatch(self) -> None:
        out = join(self.tmp.name, 'out')
        result = self.runner.invoke(cli, ['oracle', '-c', self.write_config(DIRECTION), '-o', out])
        self.assertEqual(2, result.exit_code)
        self.assertFalse(exists(out))

    def test_invalid_config(self) -> None:
        result = self.runner.invoke(cli, ['estimate', '-c', join(self.tmp.name, 'missing.json')])
        self.assertEqual(2, result.exit_code)
        result = self.runner.invoke(cli, ['estimate', '-c', self.write_config({**DIRECTION, 'times': [4, 2]})])
        self.assertEqual(2, result.exit_code)
        result = self.runner.invoke(cli, ['estimate'])
        self.assertEqual(2, result.exit_code)

    def test_runtime_error(self) -> None:
        with patch('pyrwre.cli.cli.run_experiment', side_effect=InsufficientDataError('no samples')):
            result = self.runner.invoke(cli, ['estimate', '-c', self.write_config(DIRECTION)])
        self.assertEqual(1, result.exit_code)

    def test_report_without_summary(self) -> None:
        result = self.runner.invoke(cli, ['report', '-o', self.tmp.name])
        self.assertEqual(2, result.exit_code)

    def test_version(self) -> None:
        result = self.runner.invoke(cli, ['--version'])
        self.assertEqual(0, result.exit_code)

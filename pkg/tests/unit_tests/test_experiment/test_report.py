import json
from os.path import exists
from os.path import join
from tempfile import TemporaryDirectory
from unittest import TestCase

from parameterized import parameterized  # type: ignore

from pyrwre.errors import ConfigurationError
from pyrwre.experiment.report import ExperimentResult
from pyrwre.experiment.report import Table
from pyrwre.experiment.report import emit_report
from pyrwre.experiment.report import format_value
from pyrwre.experiment.report import inputs_digest
from pyrwre.experiment.report import load_summary
from pyrwre.experiment.report import read_table


def sample_result() -> ExperimentResult:
    result = ExperimentResult(kind='box-decay', streams=['seed/box/replica/scale'])
    rows = [[2, 0.1, 0], [4, 0.05, 1]]
    result.tables.append(Table(name='box_failure', columns=['scale', 'mean', 'censored'], rows=rows))
    result.summary['decay'] = {'winner': 'polynomial'}
    return result


class TestFormatValue(TestCase):
    @parameterized.expand(
        [
            (None, ''),
            (True, 'true'),
            (False, 'false'),
            (3, '3'),
            (0.1, '0.10000000000000001'),
            ('text', 'text'),
        ]
    )
    def test_cells(self, value, expected) -> None:
        self.assertEqual(expected, format_value(value))

    def test_floats_are_recovered_exactly(self) -> None:
        for value in (1 / 3, 2.0**-40, 123456.789, 1e300):
            self.assertEqual(value, float(format_value(value)))


class TestInputsDigest(TestCase):
    def test_key_order(self) -> None:
        self.assertEqual(inputs_digest({'a': 1, 'b': [2, 3]}), inputs_digest({'b': [2, 3], 'a': 1}))
        self.assertNotEqual(inputs_digest({'a': 1}), inputs_digest({'a': 2}))
        self.assertEqual(32, len(inputs_digest({})))


class TestEmitReport(TestCase):
    def test_writes_csv_and_json(self) -> None:
        with TemporaryDirectory() as tmp:
            out = join(tmp, 'nested', 'out')
            report = emit_report(sample_result(), out, 'digest', 7, run_info={'wall_clock': 1.5, 'workers': 2})
            self.assertEqual([join(out, 'box_failure.csv')], report.csv_paths)
            self.assertEqual(1.5, report.wall_clock)
            self.assertEqual(7, report.seed)

            table = read_table(report.csv_paths[0])
            self.assertEqual(['scale', 'mean', 'censored'], table.columns)
            self.assertEqual([['2', '0.10000000000000001', '0'], ['4', '0.050000000000000003', '1']], table.rows)

            summary = load_summary(out)
            self.assertEqual('box-decay', summary['kind'])
            self.assertEqual('digest', summary['config_digest'])
            self.assertEqual(7, summary['seed'])
            self.assertEqual(['seed/box/replica/scale'], summary['streams'])
            self.assertEqual(2, summary['entries'][0]['rows'])
            self.assertEqual({'decay': {'winner': 'polynomial'}}, summary['results'])
            self.assertNotIn('wall_clock', summary)

            with open(report.run_path) as f:
                run = json.load(f)
            self.assertEqual({'config_digest': 'digest', 'wall_clock': 1.5, 'workers': 2}, run)

    def test_summary_ignores_provenance(self) -> None:
        with TemporaryDirectory() as tmp:
            first = emit_report(sample_result(), join(tmp, 'a'), 'digest', 7, run_info={'wall_clock': 1.0})
            second = emit_report(sample_result(), join(tmp, 'b'), 'digest', 7, run_info={'wall_clock': 9.0})
            with open(first.summary_path) as f, open(second.summary_path) as g:
                self.assertEqual(f.read(), g.read())

    def test_csv_only(self) -> None:
        with TemporaryDirectory() as tmp:
            report = emit_report(sample_result(), tmp, 'digest', 0, formats=('csv',))
            self.assertIsNone(report.summary_path)
            self.assertFalse(exists(join(tmp, 'summary.json')))
            self.assertTrue(exists(join(tmp, 'box_failure.csv')))

    def test_unknown_format(self) -> None:
        with TemporaryDirectory() as tmp:
            with self.assertRaises(ConfigurationError):
                emit_report(sample_result(), tmp, 'digest', 0, formats=('xml',))

    def test_missing_summary(self) -> None:
        with TemporaryDirectory() as tmp:
            with self.assertRaises(ConfigurationError) as ctx:
                load_summary(tmp)
            self.assertEqual('out', ctx.exception.field)

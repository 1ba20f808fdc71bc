from glob import glob
from os.path import basename
from os.path import join
from tempfile import TemporaryDirectory
from unittest import TestCase

from parameterized import parameterized  # type: ignore

from pyrwre.experiment.config import ExperimentConfig
from pyrwre.experiment.runner import run_experiment

UE = {'model': 'iid_ue', 'base': [0.5, 0.1, 0.2, 0.2], 'jitter': 0.3}
EXPERIMENTS = [
    ('box-decay', {'environment': UE, 'scales': [2, 4, 8], 'replicas': 40, 'fresh_env': True}),
    ('direction', {'environment': {'model': 'column_e1'}, 'times': [100, 400], 'replicas': 40}),
    ('survival', {'environment': UE, 'horizons': [10, 100], 'replicas': 40, 'alpha': '1/9'}),
    ('regeneration', {'environment': UE, 'scales': [1, 2], 'kappa': 0.15, 'horizon': 500, 'replicas': 20}),
    ('mixing', {'environment': UE, 'scales': [1, 2], 'replicas': 40}),
]


def read_outputs(out: str) -> dict:
    res = {}
    for path in sorted(glob(join(out, '*.csv'))) + [join(out, 'summary.json')]:
        with open(path, 'rb') as f:
            res[basename(path)] = f.read()
    return res


class TestDeterminism(TestCase):
    @parameterized.expand(EXPERIMENTS)
    def test_outputs_do_not_depend_on_worker_count(self, kind, fields) -> None:
        with TemporaryDirectory() as tmp:
            outputs = []
            for workers in (1, 8):
                out = join(tmp, f'workers-{workers}')
                data = {'schema_version': 1, 'kind': kind, 'seed': 17, 'workers': workers, 'out': out, **fields}
                run_experiment(ExperimentConfig.from_json(data))
                outputs.append(read_outputs(out))
            self.assertGreater(len(outputs[0]), 1)
            self.assertEqual(outputs[0], outputs[1])

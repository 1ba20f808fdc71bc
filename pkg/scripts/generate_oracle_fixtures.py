import sys
from os import makedirs
from os.path import join

import simplejson

from pyrwre.experiment.config import ExperimentConfig
from pyrwre.experiment.runner import execute

UE = {'model': 'iid_ue', 'seed': 1, 'base': [0.4, 0.2, 0.2, 0.2], 'jitter': 0.5}

fixtures = {
    'enumerate_quenched': {'kind': 'oracle-enumerate', 'environment': UE, 'oracle': {'n': 4}},
    'enumerate_augmented': {
        'kind': 'oracle-enumerate',
        'environment': UE,
        'kappa': 0.04,
        'oracle': {'n': 4, 'mode': 'augmented'},
    },
    'pattern_e1': {'kind': 'oracle-pattern', 'environment': UE, 'kappa': 0.1, 'scales': [1, 2, 3], 'oracle': {'n': 40}},
    'chung_column': {
        'kind': 'oracle-chung',
        'environment': {'model': 'column_e1', 'seed': 5},
        'oracle': {'start': 0, 'a': -5, 'b': 5},
    },
    'chung_given': {
        'kind': 'oracle-chung',
        'environment': UE,
        'oracle': {'p_values': [0.3, 0.6, 0.5, 0.7], 'start': 1, 'a': -1, 'b': 4},
    },
    'kalikow_box1': {'kind': 'oracle-kalikow', 'environment': UE, 'oracle': {'radius': 1, 'realizations': 3}},
}


def generate(out_dir: str) -> None:
    makedirs(out_dir, exist_ok=True)
    for name, fields in fixtures.items():
        config = ExperimentConfig.from_json({'schema_version': 1, **fields})
        result = execute(config)
        fixture = {'config': config.to_json(), 'config_digest': config.digest(), **result.summary['oracle']}
        with open(join(out_dir, f'{name}.json'), 'w') as f:
            simplejson.dump(fixture, f, indent=2, sort_keys=True)
        print(f'{name}: {fixture["value"]}')


if __name__ == '__main__':
    generate(sys.argv[1] if len(sys.argv) > 1 else 'oracle-fixtures')

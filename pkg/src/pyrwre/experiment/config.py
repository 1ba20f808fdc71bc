import json
from enum import Enum
from hashlib import blake2b
from os.path import dirname
from os.path import join
from typing import Any
from typing import Dict
from typing import List
from typing import Optional

import attr
import simplejson
from attr import dataclass
from cattr import Converter
from jsonschema import ValidationError  # type: ignore
from jsonschema import validate as jsonschema_validate  # type: ignore

from pyrwre.environment.abstract import AbstractEnvironment
from pyrwre.environment.ellipticity import check_uniform_ellipticity
from pyrwre.environment.ellipticity import sample_sites
from pyrwre.environment.model import EnvironmentModel
from pyrwre.environment.model import ModelKind
from pyrwre.environment.plaw import PLaw
from pyrwre.environment.plaw import default_plaw
from pyrwre.environment.plaw import make_plaw
from pyrwre.environment.window import EnvironmentWindow
from pyrwre.errors import ConfigurationError
from pyrwre.errors import LabError
from pyrwre.geometry.direction import DirectionSpec
from pyrwre.geometry.direction import make_direction
from pyrwre.geometry.direction import neighbor_directions
from pyrwre.geometry.regions import to_fraction
from pyrwre.oracles.paths import MAX_ENUMERATION_STEPS
from pyrwre.regeneration.pattern import build_pattern
from pyrwre.walk.law import make_epsilon_law

SCHEMA_VERSION = 1
DIGEST_EXCLUDED = ('workers', 'out')

with open(join(dirname(__file__), 'experiment-schema.json')) as file:
    experiment_schema = json.load(file)

converter = Converter()


class ExperimentKind(Enum):
    box_decay = 'box-decay'
    direction = 'direction'
    survival = 'survival'
    regeneration = 'regeneration'
    mixing = 'mixing'
    oracle_enumerate = 'oracle-enumerate'
    oracle_pattern = 'oracle-pattern'
    oracle_chung = 'oracle-chung'
    oracle_kalikow = 'oracle-kalikow'
    trajectory = 'trajectory'

    @property
    def verb(self) -> str:
        if self.value.startswith('oracle-'):
            return 'oracle'
        if self == ExperimentKind.trajectory:
            return 'simulate'
        return 'estimate'


@dataclass(kw_only=True, frozen=True)
class PLawConfig:
    values: List[float]
    weights: List[float]

    def build(self) -> PLaw:
        return make_plaw(self.values, self.weights)


@dataclass(kw_only=True, frozen=True)
class EnvironmentConfig:
    model: str
    dim: int = 2
    seed: int = 0
    plaw: Optional[PLawConfig] = None
    base: Optional[List[float]] = None
    jitter: float = 0.0
    kappa_env: float = 0.0
    r0: int = 1
    kernel: Optional[List[float]] = None

    def build(self) -> AbstractEnvironment:
        if self.model == 'constant':
            if self.kernel is None:
                raise ConfigurationError('environment.kernel', 'required by the constant model')
            return EnvironmentWindow.constant(self.kernel)
        try:
            kind = ModelKind(self.model)
        except ValueError as e:
            raise ConfigurationError('environment.model', f'unknown model `{self.model}`') from e
        return EnvironmentModel(
            kind=kind,
            master_seed=self.seed,
            dim=self.dim,
            plaw=self.plaw.build() if self.plaw else default_plaw(),
            base=tuple(self.base) if self.base is not None else None,
            jitter=self.jitter,
            kappa_env=self.kappa_env,
            r0=self.r0,
        )


@dataclass(kw_only=True, frozen=True)
class OracleConfig:
    n: int = 3
    mode: str = 'quenched'
    p_values: List[float] = attr.Factory(list)
    start: int = 0
    a: int = -1
    b: int = 1
    radius: int = 1
    realizations: int = 2


@dataclass(kw_only=True, frozen=True)
class ExperimentConfig:
    """Experiment description: which estimator or oracle to run, on what, and with which budget"""

    schema_version: int = SCHEMA_VERSION
    kind: str
    environment: EnvironmentConfig
    direction: List[int] = attr.Factory(lambda: [1, 0])
    alpha: str = '1/2'
    c: float = 1.0
    kappa: Optional[float] = None
    scales: List[float] = attr.Factory(list)
    horizons: List[int] = attr.Factory(list)
    times: List[int] = attr.Factory(list)
    replicas: int = 100
    step_cap: int = 1_000_000
    horizon: int = 100_000
    fresh_env: bool = False
    sequence: int = 1
    neighbor_denominator: Optional[int] = None
    oracle: OracleConfig = attr.Factory(OracleConfig)
    seed: int = 0
    workers: int = 1
    out: str = 'pyrwre-out'

    @property
    def experiment(self) -> ExperimentKind:
        return ExperimentKind(self.kind)

    @property
    def direction_spec(self) -> DirectionSpec:
        return make_direction(self.direction)

    def build_environment(self) -> AbstractEnvironment:
        return self.environment.build()

    def to_json(self) -> Dict[str, Any]:
        return converter.unstructure(self)

    def digest(self) -> str:
        """blake2b of the canonical JSON, without the fields that do not change results."""
        data = {k: v for k, v in self.to_json().items() if k not in DIGEST_EXCLUDED}
        canonical = simplejson.dumps(data, sort_keys=True, separators=(',', ':'))
        return blake2b(canonical.encode(), digest_size=32).hexdigest()

    def override(self, **kwargs: Any) -> 'ExperimentConfig':
        """Copy with the non-None keyword values replaced"""
        return attr.evolve(self, **{k: v for k, v in kwargs.items() if v is not None})

    @staticmethod
    def validate_config_json(config_json: Dict[str, Any]) -> None:
        """Validate config JSON with JSONSchema"""
        try:
            jsonschema_validate(instance=config_json, schema=experiment_schema)
        except ValidationError as e:
            field = '.'.join(str(x) for x in e.absolute_path) or '<root>'
            raise ConfigurationError(field, e.message) from e

    @classmethod
    def from_json(cls, config_json: Dict[str, Any]) -> 'ExperimentConfig':
        cls.validate_config_json(config_json)
        return converter.structure(config_json, ExperimentConfig)

    @classmethod
    def from_file(cls, path: str) -> 'ExperimentConfig':
        """Read config from JSON file by path"""
        try:
            with open(path) as f:
                config_json = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigurationError('config', f'cannot read {path}: {e}') from e
        return cls.from_json(config_json)

    def validate(self) -> None:
        """Check every precondition the experiment relies on before any replica runs.

        :raises LabError: the first violated precondition, exit code 2 for validation failures
        """
        self.validate_config_json(self.to_json())
        kind = self.experiment
        env = self.build_environment()
        direction = self.direction_spec
        if direction.d != env.d:
            raise ConfigurationError('direction', f'has {direction.d} components, environment has d={env.d}')
        alpha = to_fraction(self.alpha)
        if not 0 < alpha <= 1:
            raise ConfigurationError('alpha', f'must lie in (0, 1], got {self.alpha}')
        _VALIDATORS[kind](self, env, direction)


def _increasing(field: str, values: List[Any], minimum: int = 1) -> None:
    if len(values) < minimum:
        raise ConfigurationError(field, f'needs at least {minimum} values')
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ConfigurationError(field, f'must be increasing, got {values}')


def _require_kappa(config: ExperimentConfig) -> float:
    if config.kappa is None:
        raise ConfigurationError('kappa', f'required by {config.kind}')
    return config.kappa


def _check_law(config: ExperimentConfig, env: AbstractEnvironment, direction: DirectionSpec) -> None:
    kappa = _require_kappa(config)
    make_epsilon_law(direction, kappa)
    report = check_uniform_ellipticity(env, direction, kappa / 2, sample_sites(direction.d, config.seed))
    if not report:
        raise ConfigurationError('kappa', f'kernel {report.min_prob} at {report.worst_site} is below kappa={kappa}')


def _check_patterns(config: ExperimentConfig, direction: DirectionSpec) -> None:
    for L in config.scales:
        if int(L) != L:
            raise ConfigurationError('scales', f'pattern lengths must be integers, got {L}')
        try:
            build_pattern(direction, int(L), config.alpha)
        except LabError as e:
            raise ConfigurationError('scales', str(e)) from e


def _validate_box(config: ExperimentConfig, env: AbstractEnvironment, direction: DirectionSpec) -> None:
    _increasing('scales', config.scales)
    if config.neighbor_denominator is not None:
        for neighbor in _neighbors(config, direction):
            if neighbor.d != env.d:
                raise ConfigurationError('neighbor_denominator', 'neighbour direction has the wrong dimension')


def _neighbors(config: ExperimentConfig, direction: DirectionSpec) -> List[DirectionSpec]:
    assert config.neighbor_denominator is not None
    return neighbor_directions(direction, float(to_fraction(config.alpha)), config.neighbor_denominator)


def _validate_direction(config: ExperimentConfig, env: AbstractEnvironment, direction: DirectionSpec) -> None:
    _increasing('times', config.times)
    if config.replicas < 2:
        raise ConfigurationError('replicas', 'direction estimates need at least 2 replicas')


def _validate_survival(config: ExperimentConfig, env: AbstractEnvironment, direction: DirectionSpec) -> None:
    _increasing('horizons', config.horizons)


def _validate_regeneration(config: ExperimentConfig, env: AbstractEnvironment, direction: DirectionSpec) -> None:
    _increasing('scales', config.scales)
    _check_patterns(config, direction)
    _check_law(config, env, direction)
    if config.horizon < max(config.scales):
        raise ConfigurationError('horizon', f'{config.horizon} is below the largest pattern length')


def _validate_mixing(config: ExperimentConfig, env: AbstractEnvironment, direction: DirectionSpec) -> None:
    _increasing('scales', config.scales)
    if config.replicas < 2:
        raise ConfigurationError('replicas', 'mixing estimates need at least 2 replicas')


def _validate_enumerate(config: ExperimentConfig, env: AbstractEnvironment, direction: DirectionSpec) -> None:
    if config.oracle.n > MAX_ENUMERATION_STEPS:
        raise ConfigurationError('oracle.n', f'enumeration is limited to {MAX_ENUMERATION_STEPS} steps')
    if config.oracle.mode == 'augmented':
        _check_law(config, env, direction)


def _validate_pattern(config: ExperimentConfig, env: AbstractEnvironment, direction: DirectionSpec) -> None:
    _increasing('scales', config.scales)
    _check_patterns(config, direction)
    make_epsilon_law(direction, _require_kappa(config))


def _validate_chung(config: ExperimentConfig, env: AbstractEnvironment, direction: DirectionSpec) -> None:
    o = config.oracle
    if o.b <= o.a + 1:
        raise ConfigurationError('oracle.b', f'interval [{o.a}, {o.b}] has no interior site')
    if not o.a < o.start < o.b:
        raise ConfigurationError('oracle.start', f'{o.start} is not inside ({o.a}, {o.b})')
    if o.p_values and len(o.p_values) != o.b - o.a - 1:
        raise ConfigurationError('oracle.p_values', f'expected {o.b - o.a - 1} values, got {len(o.p_values)}')
    if not o.p_values and config.environment.model != 'column_e1':
        raise ConfigurationError('oracle.p_values', 'required unless the environment is column_e1')


def _validate_kalikow(config: ExperimentConfig, env: AbstractEnvironment, direction: DirectionSpec) -> None:
    if env.d != 2 and config.oracle.radius > 2:
        raise ConfigurationError('oracle.radius', 'Kalikow oracle on d > 2 is limited to radius 2')


def _validate_trajectory(config: ExperimentConfig, env: AbstractEnvironment, direction: DirectionSpec) -> None:
    if config.kappa is not None:
        _check_law(config, env, direction)


_VALIDATORS = {
    ExperimentKind.box_decay: _validate_box,
    ExperimentKind.direction: _validate_direction,
    ExperimentKind.survival: _validate_survival,
    ExperimentKind.regeneration: _validate_regeneration,
    ExperimentKind.mixing: _validate_mixing,
    ExperimentKind.oracle_enumerate: _validate_enumerate,
    ExperimentKind.oracle_pattern: _validate_pattern,
    ExperimentKind.oracle_chung: _validate_chung,
    ExperimentKind.oracle_kalikow: _validate_kalikow,
    ExperimentKind.trajectory: _validate_trajectory,
}

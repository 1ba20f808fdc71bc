import time
from typing import Any
from typing import Callable
from typing import Dict
from typing import List
from typing import Optional

from pyrwre import __version__
from pyrwre.environment.abstract import AbstractEnvironment
from pyrwre.errors import InsufficientDataError
from pyrwre.estimators.box import BoxFailure
from pyrwre.estimators.box import box_failure_prob
from pyrwre.estimators.decay import fit_decay
from pyrwre.estimators.direction import direction_profile
from pyrwre.estimators.mixing import mixing_profile
from pyrwre.estimators.regeneration import regeneration_second_moment
from pyrwre.estimators.survival import survival_prob_D
from pyrwre.experiment.config import ExperimentConfig
from pyrwre.experiment.config import ExperimentKind
from pyrwre.experiment.report import ExperimentResult
from pyrwre.experiment.report import RunReport
from pyrwre.experiment.report import Table
from pyrwre.experiment.report import emit_report
from pyrwre.experiment.report import inputs_digest
from pyrwre.geometry.direction import DirectionSpec
from pyrwre.geometry.direction import neighbor_directions
from pyrwre.geometry.lattice import origin
from pyrwre.geometry.regions import ConeSpec
from pyrwre.geometry.regions import to_fraction
from pyrwre.logging import logger
from pyrwre.oracles.chung import chung_hitting
from pyrwre.oracles.chung import projected_p_values
from pyrwre.oracles.kalikow import box_sites
from pyrwre.oracles.kalikow import kalikow_condition_margin
from pyrwre.oracles.kalikow import kalikow_exit_law
from pyrwre.oracles.kalikow import kalikow_kernel
from pyrwre.oracles.paths import enumerate_path_law
from pyrwre.oracles.paths import total_variation
from pyrwre.oracles.patterns import fit_pairwise_constant
from pyrwre.oracles.patterns import inclusion_exclusion_bound
from pyrwre.oracles.patterns import pairwise_occurrence_sum
from pyrwre.oracles.patterns import pattern_avoidance_prob
from pyrwre.regeneration.pattern import build_pattern
from pyrwre.rng import ReplicaStream
from pyrwre.rng import derive_seed
from pyrwre.walk.engine import run_until
from pyrwre.walk.law import make_epsilon_law

Runner = Callable[[ExperimentConfig, AbstractEnvironment, DirectionSpec, bool], ExperimentResult]


def _axis_names(prefix: str, d: int) -> List[str]:
    return [f'{prefix}{i + 1}' for i in range(d)]


def _select(columns: List[str], records: List[Dict[str, Any]]) -> List[List[Any]]:
    return [[r[c] for c in columns] for r in records]


def _box_table(name: str, failures: List[BoxFailure]) -> Table:
    rows = []
    for f in failures:
        e = f.estimate
        rows.append([f.L, e.mean, e.stderr, e.n, e.censored, f.lower, f.upper])
    return Table(name=name, columns=['scale', 'mean', 'stderr', 'n', 'censored', 'lower', 'upper'], rows=rows)


def _decay_summary(failures: List[BoxFailure]) -> Dict[str, Any]:
    try:
        return fit_decay([f.L for f in failures], [f.estimate for f in failures]).to_json()
    except InsufficientDataError as e:
        return {'error': str(e)}


def _run_box_decay(config: ExperimentConfig, env: AbstractEnvironment, direction: DirectionSpec, progress: bool):
    result = ExperimentResult(kind=config.kind, streams=['seed/box/replica/scale', 'seed/environment/replica'])
    failures = box_failure_prob(
        env,
        direction,
        config.c,
        config.scales,
        config.replicas,
        config.step_cap,
        seed=config.seed,
        workers=config.workers,
        fresh_env=config.fresh_env,
        progress=progress,
    )
    result.tables.append(_box_table('box_failure', failures))
    result.summary['direction'] = direction.to_json()
    result.summary['decay'] = _decay_summary(failures)

    if config.neighbor_denominator is not None:
        alpha = float(to_fraction(config.alpha))
        neighbors = []
        for k, neighbor in enumerate(neighbor_directions(direction, alpha, config.neighbor_denominator)):
            logger.info('Neighbour direction %s', neighbor.u)
            failures = box_failure_prob(
                env,
                neighbor,
                config.c,
                config.scales,
                config.replicas,
                config.step_cap,
                seed=derive_seed(config.seed, 'neighbor', k),
                workers=config.workers,
                fresh_env=config.fresh_env,
                progress=progress,
            )
            result.tables.append(_box_table(f'box_failure_neighbor_{k}', failures))
            neighbors.append({'direction': neighbor.to_json(), 'decay': _decay_summary(failures)})
        result.summary['neighbors'] = neighbors
    return result


def _run_direction(config: ExperimentConfig, env: AbstractEnvironment, direction: DirectionSpec, progress: bool):
    result = ExperimentResult(kind=config.kind, streams=['seed/direction/replica', 'seed/environment/replica'])
    profile = direction_profile(
        env,
        config.times,
        config.replicas,
        seed=config.seed,
        fresh_env=config.fresh_env,
        workers=config.workers,
        progress=progress,
    )
    columns = ['scale', 'dispersion', 'angle', 'speed', 'stderr', 'n', 'excluded', 'positive_fraction']
    columns += _axis_names('direction_', env.d) + _axis_names('velocity_', env.d)
    rows = []
    for estimate in profile:
        rows.append(
            [
                estimate.n,
                estimate.dispersion,
                estimate.angular_distance(direction.l),
                estimate.speed.mean,
                estimate.speed.stderr,
                estimate.speed.n,
                estimate.excluded,
                estimate.positive_fraction(0),
                *estimate.mean_direction,
                *estimate.velocity,
            ]
        )
    result.tables.append(Table(name='direction', columns=columns, rows=rows))
    result.summary['target'] = direction.to_json()
    result.summary['dispersion'] = [e.dispersion for e in profile]
    return result


def _run_survival(config: ExperimentConfig, env: AbstractEnvironment, direction: DirectionSpec, progress: bool):
    result = ExperimentResult(kind=config.kind, streams=['seed/survival/replica', 'seed/environment/replica'])
    cone = ConeSpec(vertex=origin(env.d), dir=direction, alpha=config.alpha)
    curve = survival_prob_D(
        env,
        cone,
        config.horizons,
        config.replicas,
        seed=config.seed,
        fresh_env=config.fresh_env,
        workers=config.workers,
        progress=progress,
    )
    columns = ['scale', 'mean', 'stderr', 'n', 'censored']
    result.tables.append(Table(name='survival', columns=columns, rows=_select(columns, curve.to_rows())))
    result.summary['alpha'] = str(cone.alpha)
    result.summary['plateau'] = {'mean': curve.plateau.mean, 'stderr': curve.plateau.stderr}
    return result


def _run_regeneration(config: ExperimentConfig, env: AbstractEnvironment, direction: DirectionSpec, progress: bool):
    assert config.kappa is not None
    streams = ['seed/regeneration/replica/scale', 'seed/environment/replica']
    result = ExperimentResult(kind=config.kind, streams=streams)
    profile = regeneration_second_moment(
        env,
        direction,
        config.kappa,
        [int(L) for L in config.scales],
        config.replicas,
        config.horizon,
        config.alpha,
        seed=config.seed,
        fresh_env=config.fresh_env,
        sequence=config.sequence,
        workers=config.workers,
        progress=progress,
    )
    columns = ['scale', 'mean', 'stderr', 'n', 'censored', 'censor_fraction']
    rows = [[*(p.to_row()[c] for c in columns[:-1]), p.censor_fraction] for p in profile.points]
    result.tables.append(Table(name='regeneration', columns=columns, rows=rows))

    record_rows = []
    monotone = True
    for point in profile.points:
        for replica, records in enumerate(point.records):
            previous: Optional[int] = None
            for i, r in enumerate(records):
                x_tau = list(r.x_tau) if r.x_tau is not None else [None] * env.d
                record_rows.append([replica, r.L, i, r.K, r.tau, *x_tau, r.censored, r.horizon])
                if r.x_tau is not None:
                    level = direction.level(r.x_tau)
                    monotone = monotone and (previous is None or level > previous)
                    previous = level
    record_columns = ['replica', 'L', 'index', 'K', 'tau', *_axis_names('x_tau_', env.d), 'censored', 'horizon']
    result.tables.append(Table(name='regeneration_records', columns=record_columns, rows=record_rows))
    result.summary['spread'] = profile.spread
    result.summary['flagged'] = profile.flagged
    result.summary['records_increasing'] = monotone
    return result


def _run_mixing(config: ExperimentConfig, env: AbstractEnvironment, direction: DirectionSpec, progress: bool):
    result = ExperimentResult(kind=config.kind, streams=['seed/mixing/replica'])
    profile = mixing_profile(env, direction, config.alpha, config.scales, config.replicas, config.seed, config.workers)
    columns = ['scale', 'mean', 'stderr', 'n', 'censored', 'skipped']
    result.tables.append(Table(name='mixing', columns=columns, rows=_select(columns, profile.to_rows())))
    result.summary['event_families'] = [f.describe() for f in profile.families]
    return result


def _path_text(path) -> str:
    return ';'.join(','.join(str(c) for c in x) for x in path)


def _run_enumerate(config: ExperimentConfig, env: AbstractEnvironment, direction: DirectionSpec, progress: bool):
    result = ExperimentResult(kind=config.kind)
    x0 = origin(env.d)
    quenched = enumerate_path_law(env, x0, config.oracle.n)
    inputs = {'environment': config.to_json()['environment'], 'n': config.oracle.n, 'mode': config.oracle.mode}
    if config.oracle.mode == 'augmented':
        assert config.kappa is not None
        law = make_epsilon_law(direction, config.kappa)
        augmented = enumerate_path_law(env, x0, config.oracle.n, law)
        rows = [[_path_text(p), v, augmented[p]] for p, v in sorted(quenched.probs.items())]
        result.tables.append(Table(name='path_law', columns=['path', 'quenched', 'augmented'], rows=rows))
        inputs['kappa'] = config.kappa
        value, method = total_variation(quenched, augmented), 'total variation, quenched vs augmented'
    else:
        rows = [[_path_text(p), v] for p, v in sorted(quenched.probs.items())]
        result.tables.append(Table(name='path_law', columns=['path', 'quenched'], rows=rows))
        value, method = quenched.total(), 'total mass, quenched'
    result.summary['oracle'] = {'value': value, 'method': method, 'inputs_digest': inputs_digest(inputs)}
    return result


def _run_pattern(config: ExperimentConfig, env: AbstractEnvironment, direction: DirectionSpec, progress: bool):
    assert config.kappa is not None
    result = ExperimentResult(kind=config.kind)
    law = make_epsilon_law(direction, config.kappa)
    rows = []
    grid = []
    for L in config.scales:
        pattern = build_pattern(direction, int(L), config.alpha)
        avoidance = pattern_avoidance_prob(pattern, law, config.oracle.n)
        pairwise = pairwise_occurrence_sum(pattern, law)
        rows.append([pattern.L, avoidance.value, avoidance.windows, pairwise, inclusion_exclusion_bound(pattern, law)])
        grid.append((pattern.L, config.kappa, pairwise))
    columns = ['scale', 'avoidance', 'windows', 'pairwise', 'first_order_bound']
    result.tables.append(Table(name='pattern', columns=columns, rows=rows))
    inputs = {'direction': direction.to_json(), 'kappa': config.kappa, 'scales': config.scales, 'n': config.oracle.n}
    result.summary['oracle'] = {
        'value': fit_pairwise_constant(grid),
        'method': 'pairwise constant max pairwise / (L^2 kappa^L)',
        'inputs_digest': inputs_digest(inputs),
    }
    return result


def _run_chung(config: ExperimentConfig, env: AbstractEnvironment, direction: DirectionSpec, progress: bool):
    result = ExperimentResult(kind=config.kind)
    o = config.oracle
    p_values = list(o.p_values) or projected_p_values(env, o.a, o.b)
    value = chung_hitting(p_values, o.start, o.a, o.b)
    rows = [[i, p] for i, p in zip(range(o.a + 1, o.b), p_values)]
    result.tables.append(Table(name='chung', columns=['site', 'p'], rows=rows))
    inputs = {'p_values': p_values, 'start': o.start, 'a': o.a, 'b': o.b}
    result.summary['oracle'] = {'value': value, 'method': 'chung', 'inputs_digest': inputs_digest(inputs)}
    return result


def _run_kalikow(config: ExperimentConfig, env: AbstractEnvironment, direction: DirectionSpec, progress: bool):
    result = ExperimentResult(kind=config.kind, streams=['seed/kalikow/realization'])
    o = config.oracle
    realizations = [(1.0, env.with_seed(derive_seed(config.seed, 'kalikow', k))) for k in range(o.realizations)]
    V = box_sites(o.radius, env.d)
    kernel = kalikow_kernel(realizations, V)
    exit_law = kalikow_exit_law(realizations, V)
    columns = [*_axis_names('x', env.d), *_axis_names('p', 2 * env.d), *_axis_names('drift_', env.d), 'green_mass']
    rows = [[*x, *kernel.probs[x], *kernel.drift(x), kernel.green_mass[x]] for x in kernel.sites]
    result.tables.append(Table(name='kalikow', columns=columns, rows=rows))
    inputs = {'environment': config.to_json()['environment'], 'radius': o.radius, 'realizations': o.realizations}
    result.summary['oracle'] = {
        'value': kalikow_condition_margin(kernel, direction),
        'method': 'Kalikow drift margin along l',
        'inputs_digest': inputs_digest({**inputs, 'seed': config.seed}),
    }
    result.summary['exit_law_difference'] = exit_law.max_difference()
    return result


def _run_trajectory(config: ExperimentConfig, env: AbstractEnvironment, direction: DirectionSpec, progress: bool):
    result = ExperimentResult(kind=config.kind, streams=['seed/trajectory'])
    law = make_epsilon_law(direction, config.kappa) if config.kappa is not None else None
    stream = ReplicaStream(config.seed, 'trajectory')
    traj = run_until(env, origin(env.d), [], config.horizon, stream, law=law)
    result.trajectories['trajectory'] = traj
    result.summary['steps'] = traj.steps
    result.summary['end'] = list(traj.end)
    result.summary['mode'] = traj.mode.value
    result.summary['stream_id'] = traj.stream_id
    return result


_RUNNERS: Dict[ExperimentKind, Runner] = {
    ExperimentKind.box_decay: _run_box_decay,
    ExperimentKind.direction: _run_direction,
    ExperimentKind.survival: _run_survival,
    ExperimentKind.regeneration: _run_regeneration,
    ExperimentKind.mixing: _run_mixing,
    ExperimentKind.oracle_enumerate: _run_enumerate,
    ExperimentKind.oracle_pattern: _run_pattern,
    ExperimentKind.oracle_chung: _run_chung,
    ExperimentKind.oracle_kalikow: _run_kalikow,
    ExperimentKind.trajectory: _run_trajectory,
}


def execute(config: ExperimentConfig, progress: bool = False) -> ExperimentResult:
    """Validate the config and run the experiment without writing anything."""
    config.validate()
    kind = config.experiment
    logger.info('Running %s with seed %s on %s worker(s)', kind.value, config.seed, config.workers)
    return _RUNNERS[kind](config, config.build_environment(), config.direction_spec, progress)


def run_experiment(config: ExperimentConfig, progress: bool = False) -> RunReport:
    """Run the experiment described by `config` and write its report under `config.out`.

    Validation happens before any replica runs, so a config error leaves no partial output.
    """
    started = time.perf_counter()
    result = execute(config, progress)
    wall_clock = time.perf_counter() - started
    run_info = {'wall_clock': wall_clock, 'workers': config.workers, 'version': __version__}
    return emit_report(result, config.out, config.digest(), config.seed, run_info=run_info)

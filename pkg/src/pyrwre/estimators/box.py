import math
from functools import partial
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from attr import dataclass

from pyrwre.environment.abstract import AbstractEnvironment
from pyrwre.errors import ConfigurationError
from pyrwre.errors import PreconditionError
from pyrwre.estimators.estimate import MCEstimate
from pyrwre.estimators.estimate import replica_env
from pyrwre.estimators.estimate import replica_stream
from pyrwre.geometry.direction import DirectionSpec
from pyrwre.geometry.lattice import origin
from pyrwre.geometry.regions import BoxSpec
from pyrwre.geometry.regions import ExitClass
from pyrwre.logging import logger
from pyrwre.parallel import replica_map
from pyrwre.walk.engine import StopPredicate
from pyrwre.walk.engine import exits_box
from pyrwre.walk.engine import run_until

EXIT_POSITIVE = 0
EXIT_FAILURE = 1
EXIT_CENSORED = 2
CENSOR_WARNING_FRACTION = 0.1


@dataclass(kw_only=True, frozen=True)
class BoxFailure:
    """Failure P[X_{T_B} not in the positive boundary] at one scale, with censoring as an interval."""

    L: float
    n: int
    failures: int
    censored: int

    @property
    def lower(self) -> float:
        return self.failures / self.n

    @property
    def upper(self) -> float:
        return (self.failures + self.censored) / self.n

    @property
    def estimate(self) -> MCEstimate:
        """Midpoint of the interval, stderr inflated by the half width."""
        base = MCEstimate.from_bernoulli(self.failures, self.n, self.censored)
        half_width = (self.upper - self.lower) / 2
        return MCEstimate(
            mean=self.lower + half_width,
            stderr=math.sqrt(base.stderr**2 + half_width**2),
            n=self.n,
            censored=self.censored,
        )


def _box_replica(
    index: int,
    env: AbstractEnvironment,
    direction: DirectionSpec,
    c: float,
    scales: Tuple[float, ...],
    step_cap: int,
    seed: int,
    fresh_env: bool,
) -> Tuple[int, ...]:
    walk_env = replica_env(env, seed, index, fresh_env)
    x0 = origin(direction.d)
    res = []
    for k, L in enumerate(scales):
        box = BoxSpec(center=x0, L=L, Lp=c * L, dir=direction)
        stream = replica_stream(seed, 'box', index, k)
        traj = run_until(walk_env, x0, [exits_box(box)], step_cap, stream, keep_path=False)
        if traj.censored:
            res.append(EXIT_CENSORED)
        elif box.exit_class(traj.end) == ExitClass.positive_boundary:
            res.append(EXIT_POSITIVE)
        else:
            res.append(EXIT_FAILURE)
    return tuple(res)


def box_failure_prob(
    env: AbstractEnvironment,
    direction: DirectionSpec,
    c: float,
    scales: Sequence[float],
    replicas: int,
    step_cap: int,
    seed: int = 0,
    workers: int = 1,
    fresh_env: bool = False,
    progress: bool = False,
) -> List[BoxFailure]:
    """Estimate P_0[X_{T_B} not in the positive boundary of B_{L, cL, l}(0)] for every L.

    :param env: environment (or template for fresh environments)
    :param direction: box direction l
    :param c: transverse aspect, Lp = c L
    :param scales: increasing depths L
    :param replicas: number of walks per scale
    :param step_cap: walks still inside the box after this many steps are censored
    :param fresh_env: draw a new environment per replica (annealed estimate)
    """
    if replicas <= 0:
        raise ConfigurationError('replicas', f'must be positive, got {replicas}')
    if c <= 0:
        raise PreconditionError(f'c must be positive, got {c}')
    if any(b <= a for a, b in zip(scales, scales[1:])):
        raise PreconditionError(f'Scales must be increasing, got {list(scales)}')
    func = partial(
        _box_replica,
        env=env,
        direction=direction,
        c=c,
        scales=tuple(scales),
        step_cap=step_cap,
        seed=seed,
        fresh_env=fresh_env,
    )
    outcomes = replica_map(func, replicas, workers, progress, description='box exits')
    res = []
    for k, L in enumerate(scales):
        column = [o[k] for o in outcomes]
        failure = BoxFailure(
            L=L,
            n=replicas,
            failures=column.count(EXIT_FAILURE),
            censored=column.count(EXIT_CENSORED),
        )
        logger.info('L=%s: failure in [%s, %s]', L, failure.lower, failure.upper)
        if failure.censored > CENSOR_WARNING_FRACTION * replicas:
            logger.warning('L=%s: %s of %s walks censored at step cap %s', L, failure.censored, replicas, step_cap)
        res.append(failure)
    return res


def _hitting_replica(
    index: int,
    env: AbstractEnvironment,
    axis: int,
    a: int,
    b: int,
    step_cap: int,
    seed: int,
    start: Tuple[int, ...],
) -> Optional[bool]:
    left = StopPredicate(name='left', test=lambda x, t: x[axis] <= a)
    right = StopPredicate(name='right', test=lambda x, t: x[axis] >= b)
    stream = replica_stream(seed, 'hitting', index)
    traj = run_until(env, start, [left, right], step_cap, stream, keep_path=False)
    if traj.censored:
        return None
    return traj.stop_cause.index == 0


def hitting_order_prob(
    env: AbstractEnvironment,
    axis: int,
    a: int,
    b: int,
    replicas: int,
    step_cap: int,
    seed: int = 0,
    start: Optional[Sequence[int]] = None,
    workers: int = 1,
) -> MCEstimate:
    """P[X . e_axis reaches a or below before b or above]; censored walks count in `censored` only."""
    if replicas <= 0:
        raise ConfigurationError('replicas', f'must be positive, got {replicas}')
    x0 = tuple(start) if start is not None else origin(env.d)
    if not a < x0[axis] < b:
        raise PreconditionError(f'Start {x0} must lie strictly between {a} and {b} along axis {axis}')
    func = partial(_hitting_replica, env=env, axis=axis, a=a, b=b, step_cap=step_cap, seed=seed, start=x0)
    outcomes = replica_map(func, replicas, workers)
    finished = [o for o in outcomes if o is not None]
    return MCEstimate.from_bernoulli(sum(finished), len(finished), replicas - len(finished))

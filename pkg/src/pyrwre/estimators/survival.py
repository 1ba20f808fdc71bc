from functools import partial
from typing import List
from typing import Optional
from typing import Sequence
from typing import Union

from attr import dataclass

from pyrwre.environment.abstract import AbstractEnvironment
from pyrwre.errors import ConfigurationError
from pyrwre.errors import PreconditionError
from pyrwre.estimators.box import BoxFailure
from pyrwre.estimators.estimate import MCEstimate
from pyrwre.estimators.estimate import replica_env
from pyrwre.estimators.estimate import replica_stream
from pyrwre.geometry.regions import ConeSpec
from pyrwre.logging import logger
from pyrwre.parallel import replica_map
from pyrwre.walk.engine import exits_cone
from pyrwre.walk.engine import run_until


@dataclass(kw_only=True, frozen=True)
class SurvivalCurve:
    """P[D' > N] over a horizon ladder, from the same replicas at every N."""

    horizons: List[int]
    points: List[MCEstimate]
    exit_times: List[Optional[int]]

    @property
    def plateau(self) -> MCEstimate:
        return self.points[-1]

    def to_rows(self) -> List[dict]:
        return [
            {'scale': N, 'mean': p.mean, 'stderr': p.stderr, 'n': p.n, 'censored': p.censored}
            for N, p in zip(self.horizons, self.points)
        ]


def _cone_exit_replica(
    index: int,
    env: AbstractEnvironment,
    cone: ConeSpec,
    horizon: int,
    seed: int,
    fresh_env: bool,
) -> Optional[int]:
    walk_env = replica_env(env, seed, index, fresh_env)
    stream = replica_stream(seed, 'survival', index)
    traj = run_until(walk_env, cone.vertex, [exits_cone(cone)], horizon, stream, keep_path=False)
    return None if traj.censored else traj.steps


def survival_prob_D(
    env: AbstractEnvironment,
    cone: ConeSpec,
    horizons: Sequence[int],
    replicas: int,
    seed: int = 0,
    fresh_env: bool = False,
    workers: int = 1,
    progress: bool = False,
) -> SurvivalCurve:
    """Survival curve N -> P[D' > N] of the quenched walk started at the cone vertex.

    Every replica runs once up to the largest horizon; the curve is read off the recorded
    exit times, so it is nonincreasing by construction. The last point is the truncation
    estimate of P[D' = infinity].

    :param cone: cone anchored at the starting point
    :param horizons: increasing horizon ladder
    """
    if replicas <= 0:
        raise ConfigurationError('replicas', f'must be positive, got {replicas}')
    if not horizons or horizons[0] < 1 or any(b <= a for a, b in zip(horizons, horizons[1:])):
        raise PreconditionError(f'Horizon ladder must be positive and increasing, got {list(horizons)}')
    func = partial(_cone_exit_replica, env=env, cone=cone, horizon=horizons[-1], seed=seed, fresh_env=fresh_env)
    exits = replica_map(func, replicas, workers, progress, description='cone exits')
    unfinished = sum(1 for t in exits if t is None)
    points = []
    for N in horizons:
        alive = sum(1 for t in exits if t is None or t > N)
        points.append(MCEstimate.from_bernoulli(alive, replicas, censored=unfinished))
    logger.info('Survival at N=%s: %s', horizons[-1], points[-1].mean)
    return SurvivalCurve(horizons=list(horizons), points=points, exit_times=exits)


def stacked_box_scales(m: int, count: int) -> List[int]:
    """Depths 2^m, 2^(m+1), ... of the stacked boxes feeding stacked_box_lower_bound."""
    if m < 0 or count < 1:
        raise PreconditionError(f'Need m >= 0 and count >= 1, got m={m}, count={count}')
    return [2 ** (m + i) for i in range(count)]


def stacked_box_lower_bound(
    failures: Sequence[Union[float, MCEstimate, BoxFailure]],
    m: int,
    c: float,
    d: int,
    kappa: float,
    path_length: int,
) -> float:
    """Lower bound on P[D' = infinity] from estimated exit failures of stacked boxes.

    Box i has depth 2^(m+i) and transverse size c 2^(m+i). Starting from J_0 = 1 - f_0, every
    further box keeps J_i = (1 - sqrt(f_i)) (J_{i-1} - |F_{i-1}| sqrt(f_i)), where |F_{i-1}| counts
    the sites of the faces reached so far. The clipped product y enters
    (2 kappa)^path_length max(0, 1 - 2 (d - 1) (1 - y)), the cost of forcing the walk into the
    first box along a fixed path.

    This is a heuristic that follows the shape of the stacked-box argument; the constants of
    the rigorous bound are not reproduced, so the value is an indicator rather than a proven
    lower bound.

    :param failures: per-box failure probabilities, smallest box first
    :param path_length: number of forced steps before the first box
    """
    if not failures:
        raise PreconditionError('At least one box failure estimate is required')
    if kappa <= 0 or 2 * kappa > 1:
        raise PreconditionError(f'kappa must lie in (0, 1/2], got {kappa}')
    if d < 2 or c <= 0 or path_length < 0:
        raise PreconditionError(f'Invalid stacking parameters d={d}, c={c}, path_length={path_length}')
    f = [_failure_value(x) for x in failures]
    J = 1.0 - f[0]
    face_extent = 0.0
    for i in range(1, len(f)):
        face_extent += 2 * c * 2 ** (m + i)
        s = f[i] ** 0.5
        J = (1.0 - s) * (J - face_extent ** (d - 1) * s)
    y = min(1.0, max(0.0, J))
    return (2 * kappa) ** path_length * max(0.0, 1.0 - 2 * (d - 1) * (1.0 - y))


def _failure_value(x: Union[float, MCEstimate, BoxFailure]) -> float:
    if isinstance(x, BoxFailure):
        value = x.upper
    elif isinstance(x, MCEstimate):
        value = x.mean
    else:
        value = float(x)
    if not 0 <= value <= 1:
        raise PreconditionError(f'Failure probability {value} is outside [0, 1]')
    return value

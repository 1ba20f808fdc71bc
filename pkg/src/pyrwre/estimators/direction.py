import math
from functools import partial
from typing import List
from typing import Sequence
from typing import Tuple

import numpy as np
from attr import dataclass

from pyrwre.environment.abstract import AbstractEnvironment
from pyrwre.errors import DegenerateSampleError
from pyrwre.errors import PreconditionError
from pyrwre.estimators.estimate import MCEstimate
from pyrwre.estimators.estimate import replica_env
from pyrwre.estimators.estimate import replica_stream
from pyrwre.geometry.lattice import Point
from pyrwre.geometry.lattice import origin
from pyrwre.logging import logger
from pyrwre.parallel import replica_map
from pyrwre.walk.engine import iter_steps


@dataclass(kw_only=True, frozen=True)
class DirectionEstimate:
    """Endpoints X_n of every replica and the statistics of X_n / |X_n|_2."""

    n: int
    endpoints: Tuple[Point, ...]
    units: Tuple[Tuple[float, ...], ...]
    excluded: int
    mean_direction: Tuple[float, ...]
    dispersion: float
    velocity: Tuple[float, ...]
    speed: MCEstimate

    def angular_distance(self, target: Sequence[float]) -> float:
        """Angle in radians between the mean direction and `target`."""
        t = np.asarray(target, dtype=float)
        cos = float(np.dot(self.mean_direction, t) / np.linalg.norm(t))
        return math.acos(max(-1.0, min(1.0, cos)))

    def positive_fraction(self, axis: int = 0) -> float:
        return sum(1 for x in self.endpoints if x[axis] > 0) / len(self.endpoints)

    def to_json(self) -> dict:
        return {
            'n': self.n,
            'replicas': len(self.endpoints),
            'excluded': self.excluded,
            'mean_direction': list(self.mean_direction),
            'dispersion': self.dispersion,
            'velocity': list(self.velocity),
            'speed': {'mean': self.speed.mean, 'stderr': self.speed.stderr},
        }


def _endpoints_replica(
    index: int,
    env: AbstractEnvironment,
    times: Tuple[int, ...],
    seed: int,
    fresh_env: bool,
) -> Tuple[Point, ...]:
    walk_env = replica_env(env, seed, index, fresh_env)
    stream = replica_stream(seed, 'direction', index)
    pending = list(times)
    res = []
    for t, x, _ in iter_steps(walk_env, origin(env.d), stream):
        while pending and pending[0] == t:
            res.append(x)
            pending.pop(0)
        if not pending:
            break
    return tuple(res)


def summarize_endpoints(n: int, endpoints: Sequence[Point]) -> DirectionEstimate:
    """Direction statistics of endpoints observed at time n; walks sitting at the origin are excluded."""
    data = np.asarray(endpoints, dtype=float)
    norms = np.linalg.norm(data, axis=1)
    moved = norms > 0
    if not np.any(moved):
        raise DegenerateSampleError(f'All {len(endpoints)} replicas are at the origin at time {n}')
    units = data[moved] / norms[moved][:, None]
    mean_unit = units.mean(axis=0)
    total = units.sum(axis=0)
    mean_direction = total / np.linalg.norm(total) if np.linalg.norm(total) > 0 else mean_unit
    return DirectionEstimate(
        n=n,
        endpoints=tuple(tuple(x) for x in endpoints),
        units=tuple(tuple(float(c) for c in u) for u in units),
        excluded=int(np.count_nonzero(~moved)),
        mean_direction=tuple(float(c) for c in mean_direction),
        dispersion=float(1.0 - np.linalg.norm(mean_unit)),
        velocity=tuple(float(c) for c in data.mean(axis=0) / n),
        speed=MCEstimate.from_samples(norms / n),
    )


def direction_profile(
    env: AbstractEnvironment,
    times: Sequence[int],
    replicas: int,
    seed: int = 0,
    fresh_env: bool = False,
    workers: int = 1,
    progress: bool = False,
) -> List[DirectionEstimate]:
    """Direction estimates at every time of an increasing ladder, read off the same replicas.

    :param env: environment, or the template of fresh environments
    :param times: increasing observation times
    :param replicas: number of walks, at least 2
    :param fresh_env: draw a new environment per replica
    """
    if not times or times[0] < 1:
        raise PreconditionError(f'Observation times must be at least 1, got {list(times)}')
    if any(b <= a for a, b in zip(times, times[1:])):
        raise PreconditionError(f'Observation times must be increasing, got {list(times)}')
    if replicas < 2:
        raise PreconditionError(f'At least 2 replicas are required, got {replicas}')
    func = partial(_endpoints_replica, env=env, times=tuple(times), seed=seed, fresh_env=fresh_env)
    outcomes = replica_map(func, replicas, workers, progress, description='directions')
    res = []
    for k, n in enumerate(times):
        estimate = summarize_endpoints(n, [o[k] for o in outcomes])
        logger.info('n=%s: dispersion %s, %s excluded', n, estimate.dispersion, estimate.excluded)
        res.append(estimate)
    return res


def direction_estimate(
    env: AbstractEnvironment,
    n: int,
    replicas: int,
    seed: int = 0,
    fresh_env: bool = False,
    workers: int = 1,
) -> DirectionEstimate:
    return direction_profile(env, [n], replicas, seed, fresh_env, workers)[0]

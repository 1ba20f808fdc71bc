import math
from bisect import bisect_right
from functools import partial
from itertools import accumulate
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np
from attr import dataclass

from pyrwre.errors import ConfigurationError
from pyrwre.errors import InsufficientDataError
from pyrwre.errors import PreconditionError
from pyrwre.estimators.estimate import MCEstimate
from pyrwre.estimators.estimate import replica_stream
from pyrwre.geometry.lattice import Point
from pyrwre.geometry.lattice import origin
from pyrwre.geometry.lattice import unit_vectors
from pyrwre.oracles.kalikow import Realization
from pyrwre.parallel import replica_map
from pyrwre.walk.engine import iter_steps

Visits = Tuple[Tuple[int, ...], ...]


@dataclass(kw_only=True, frozen=True)
class OccupationEstimate:
    """Monte Carlo occupation-ratio estimate of Kalikow's kernel, one MCEstimate per site and direction."""

    probs: Dict[Point, Tuple[MCEstimate, ...]]
    censored: int

    def max_deviation(self, exact: Dict[Point, Sequence[float]]) -> float:
        """Largest |estimate - exact| in units of standard error over sites and directions."""
        res = 0.0
        for x, estimates in self.probs.items():
            for e, p in zip(estimates, exact[x]):
                gap = abs(e.mean - p)
                if gap == 0:
                    continue
                res = max(res, gap / e.stderr if e.stderr > 0 else math.inf)
        return res


def _visits_replica(
    index: int,
    realizations: Tuple[Realization, ...],
    sites: Tuple[Point, ...],
    start: Point,
    step_cap: int,
    seed: int,
) -> Optional[Visits]:
    stream = replica_stream(seed, 'kalikow', index)
    cumulative = list(accumulate(w for w, _ in realizations))
    pick = min(bisect_right(cumulative, stream.uniform() * cumulative[-1]), len(realizations) - 1)
    env = realizations[pick][1]
    moves = unit_vectors(len(start))
    index_of = {x: i for i, x in enumerate(sites)}
    counts = [[0] * len(moves) for _ in sites]
    x = start
    for t, y, _ in iter_steps(env, start, stream):
        delta = tuple(b - a for a, b in zip(x, y))
        counts[index_of[x]][moves.index(delta)] += 1
        if y not in index_of:
            return tuple(tuple(row) for row in counts)
        if t >= step_cap:
            return None
        x = y
    return None


def kalikow_occupation_estimate(
    realizations: Sequence[Realization],
    V: Sequence[Sequence[int]],
    replicas: int,
    step_cap: int,
    seed: int = 0,
    start: Optional[Sequence[int]] = None,
    workers: int = 1,
) -> OccupationEstimate:
    """Ratio estimate sum_i N_i(x, e) / sum_i N_i(x) of Kalikow's kernel on V.

    Every replica picks a realization by weight and counts visits to V, and the steps taken
    from every site, until the walk leaves V.

    :param step_cap: replicas still inside V after this many steps are censored and dropped
    """
    if replicas < 2:
        raise ConfigurationError('replicas', f'must be at least 2, got {replicas}')
    if not realizations or any(w < 0 for w, _ in realizations) or sum(w for w, _ in realizations) <= 0:
        raise PreconditionError('Realization weights must be nonnegative with a positive sum')
    sites = tuple(dict.fromkeys(tuple(x) for x in V))
    x0 = tuple(start) if start is not None else origin(len(sites[0]))
    if x0 not in sites:
        raise PreconditionError(f'Start {x0} must belong to V')
    func = partial(
        _visits_replica,
        realizations=tuple(realizations),
        sites=sites,
        start=x0,
        step_cap=step_cap,
        seed=seed,
    )
    outcomes = replica_map(func, replicas, workers)
    finished = [o for o in outcomes if o is not None]
    if len(finished) < 2:
        raise InsufficientDataError(f'Only {len(finished)} of {replicas} replicas left V')
    counts = np.array(finished, dtype=float)
    n = len(finished)
    probs: Dict[Point, Tuple[MCEstimate, ...]] = {}
    for i, x in enumerate(sites):
        num = counts[:, i, :]
        den = num.sum(axis=1)
        if den.sum() == 0:
            raise InsufficientDataError(f'Site {x} was never visited')
        row: List[MCEstimate] = []
        for k in range(num.shape[1]):
            ratio = num[:, k].sum() / den.sum()
            residual = num[:, k] - ratio * den
            stderr = math.sqrt(float(np.sum(residual**2)) / (n * (n - 1))) / float(den.mean())
            row.append(MCEstimate(mean=float(ratio), stderr=stderr, n=n, censored=replicas - n))
        probs[x] = tuple(row)
    return OccupationEstimate(probs=probs, censored=replicas - n)

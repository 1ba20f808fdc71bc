import math
from fractions import Fraction
from functools import partial
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np
from attr import dataclass

from pyrwre.environment.abstract import AbstractEnvironment
from pyrwre.errors import ConfigurationError
from pyrwre.errors import PreconditionError
from pyrwre.estimators.estimate import MCEstimate
from pyrwre.geometry.direction import DirectionSpec
from pyrwre.geometry.direction import epsilon_set
from pyrwre.geometry.lattice import Point
from pyrwre.geometry.lattice import origin
from pyrwre.geometry.lattice import symbol_name
from pyrwre.geometry.regions import AlphaLike
from pyrwre.geometry.regions import ConeSpec
from pyrwre.logging import logger
from pyrwre.parallel import replica_map
from pyrwre.rng import derive_seed

EVENT_FLOOR = 0.05


@dataclass(kw_only=True, frozen=True)
class EventFamily:
    """Threshold events {omega(z, e) >= pooled median of omega(z, e)} at a few sites."""

    symbol: int
    alpha: Fraction
    a_sites: Tuple[Point, ...]
    b_sites: Tuple[Point, ...]

    def describe(self) -> str:
        a = ', '.join(str(z) for z in self.a_sites)
        b = ', '.join(str(z) for z in self.b_sites)
        return f'omega(z, {symbol_name(self.symbol)}) >= median; A at {a}; B at {b}; alpha={self.alpha}'


@dataclass(kw_only=True, frozen=True)
class MixingProfile:
    separations: List[float]
    phi: List[MCEstimate]
    families: List[EventFamily]
    skipped: List[int]

    def to_rows(self) -> List[dict]:
        return [
            {'scale': r, 'mean': p.mean, 'stderr': p.stderr, 'n': p.n, 'censored': 0, 'skipped': s}
            for r, p, s in zip(self.separations, self.phi, self.skipped)
        ]


def event_family(direction: DirectionSpec, alpha: AlphaLike, r: float) -> EventFamily:
    """Sites 0 and -u behind the hyperplane, k u and (k + 1) u with k q >= r inside C(r l, l, alpha).

    :raises PreconditionError: separation is not positive
    """
    if r <= 0:
        raise PreconditionError(f'Separation must be positive, got {r}')
    # sites on the ray k u, k q >= r, lie in C(r l, l, alpha) for every alpha
    cone = ConeSpec(vertex=origin(direction.d), dir=direction, alpha=alpha)
    x0 = cone.vertex
    back = tuple(-c for c in direction.u)
    k = max(1, math.ceil(r / direction.q))
    ahead = tuple(k * c for c in direction.u)
    further = tuple((k + 1) * c for c in direction.u)
    return EventFamily(
        symbol=epsilon_set(direction)[0],
        alpha=cone.alpha,
        a_sites=(x0, back),
        b_sites=(ahead, further),
    )


def _coordinates_replica(
    index: int,
    env: AbstractEnvironment,
    sites: Tuple[Point, ...],
    symbol: int,
    seed: int,
) -> Tuple[float, ...]:
    sample = env.with_seed(derive_seed(seed, 'mixing', index))
    return tuple(sample.kernel_at(z)[symbol] for z in sites)


def _pair_phi(a: np.ndarray, b: np.ndarray) -> Optional[Tuple[float, float]]:
    """|P[AB] / P[A] - P[B]| with its delta-method standard error, or None below the floor."""
    n = len(a)
    pa = a.mean()
    if pa < EVENT_FLOOR:
        return None
    pb = b.mean()
    ab = a * b
    pab = ab.mean()
    value = pab / pa - pb
    influence = (ab - pab) / pa - pab * (a - pa) / pa**2 - (b - pb)
    stderr = float(influence.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return abs(float(value)), stderr


def mixing_profile(
    env: AbstractEnvironment,
    direction: DirectionSpec,
    alpha: AlphaLike,
    separations: Sequence[float],
    replicas: int,
    seed: int = 0,
    workers: int = 1,
) -> MixingProfile:
    """Empirical cone-mixing coefficient phi(r) over threshold events, one environment per replica.

    :param separations: distances r of the cone vertex r l from the origin
    :param replicas: number of environments sampled
    """
    if replicas < 2:
        raise ConfigurationError('replicas', f'must be at least 2, got {replicas}')
    families = [event_family(direction, alpha, r) for r in separations]
    phis: List[MCEstimate] = []
    skipped: List[int] = []
    for r, family in zip(separations, families):
        sites = family.a_sites + family.b_sites
        func = partial(_coordinates_replica, env=env, sites=sites, symbol=family.symbol, seed=seed)
        values = np.array(replica_map(func, replicas, workers))
        medians = np.median(values, axis=0)
        events = (values >= medians).astype(float)
        na = len(family.a_sites)
        best: Tuple[float, float] = (0.0, 0.0)
        missing = 0
        for i in range(na):
            for j in range(na, len(sites)):
                pair = _pair_phi(events[:, i], events[:, j])
                if pair is None:
                    logger.warning('r=%s: skipping A-site %s, P[A] below %s', r, sites[i], EVENT_FLOOR)
                    missing += 1
                elif pair[0] >= best[0]:
                    best = pair
        phis.append(MCEstimate(mean=best[0], stderr=best[1], n=replicas))
        skipped.append(missing)
        logger.info('r=%s: phi=%s (stderr %s)', r, best[0], best[1])
    return MixingProfile(separations=list(separations), phi=phis, families=families, skipped=skipped)

from functools import partial
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from attr import dataclass

from pyrwre.environment.abstract import AbstractEnvironment
from pyrwre.environment.ellipticity import check_uniform_ellipticity
from pyrwre.environment.ellipticity import sample_sites
from pyrwre.errors import ConfigurationError
from pyrwre.errors import EllipticityError
from pyrwre.errors import InsufficientDataError
from pyrwre.errors import PreconditionError
from pyrwre.estimators.estimate import MCEstimate
from pyrwre.estimators.estimate import replica_env
from pyrwre.estimators.estimate import replica_stream
from pyrwre.geometry.direction import DirectionSpec
from pyrwre.geometry.regions import AlphaLike
from pyrwre.logging import logger
from pyrwre.parallel import replica_map
from pyrwre.regeneration.detect import RegenerationRecord
from pyrwre.regeneration.detect import detect_tau
from pyrwre.regeneration.detect import tau_sequence
from pyrwre.regeneration.pattern import PatternSpec
from pyrwre.regeneration.pattern import build_pattern
from pyrwre.walk.law import EpsilonLaw
from pyrwre.walk.law import make_epsilon_law

SPREAD_LIMIT = 10.0
CENSOR_WARNING_FRACTION = 0.1


@dataclass(kw_only=True, frozen=True)
class SecondMoment:
    """(kappa^L X_tau . l)^2 over the uncensored replicas of one pattern length."""

    L: int
    estimate: MCEstimate
    censor_fraction: float
    records: List[List[RegenerationRecord]]

    def to_row(self) -> dict:
        e = self.estimate
        return {'scale': self.L, 'mean': e.mean, 'stderr': e.stderr, 'n': e.n, 'censored': e.censored}


@dataclass(kw_only=True, frozen=True)
class SecondMomentProfile:
    points: List[SecondMoment]

    @property
    def spread(self) -> float:
        means = [p.estimate.mean for p in self.points]
        low = min(means)
        return float('inf') if low <= 0 else max(means) / low

    @property
    def flagged(self) -> bool:
        """Estimates differ by more than a factor of 10 across the grid."""
        return self.spread > SPREAD_LIMIT


def regeneration_statistic(record: RegenerationRecord, direction: DirectionSpec, kappa: float) -> float:
    assert record.x_tau is not None
    return (kappa**record.L * direction.level(record.x_tau) / direction.q) ** 2


def _records_replica(
    index: int,
    env: AbstractEnvironment,
    patterns: Tuple[PatternSpec, ...],
    law: EpsilonLaw,
    horizon: int,
    seed: int,
    fresh_env: bool,
    sequence: int,
) -> Tuple[List[RegenerationRecord], ...]:
    walk_env = replica_env(env, seed, index, fresh_env)
    res = []
    for k, pattern in enumerate(patterns):
        stream = replica_stream(seed, 'regeneration', index, k)
        if sequence > 1:
            res.append(tau_sequence(walk_env, pattern, law, sequence, horizon, stream))
        else:
            res.append([detect_tau(walk_env, pattern, law, horizon, stream)])
    return tuple(res)


def _check_law(env: AbstractEnvironment, direction: DirectionSpec, law: EpsilonLaw, seed: int) -> None:
    report = check_uniform_ellipticity(env, direction, law.kappa / 2, sample_sites(direction.d, seed))
    if not report:
        raise EllipticityError(f'Kernel {report.min_prob} at {report.worst_site} is below kappa={law.kappa}')


def regeneration_second_moment(
    env: AbstractEnvironment,
    direction: DirectionSpec,
    kappa: float,
    scales: Sequence[int],
    replicas: int,
    horizon: int,
    alpha: AlphaLike,
    seed: int = 0,
    fresh_env: bool = False,
    sequence: int = 1,
    workers: int = 1,
    progress: bool = False,
    law: Optional[EpsilonLaw] = None,
) -> SecondMomentProfile:
    """Per pattern length L, the mean of (kappa^L X_tau . l)^2 over uncensored replicas.

    :param kappa: forcing weight of the epsilon law
    :param scales: pattern lengths, multiples of |u|_1
    :param horizon: steps observed per replica; a replica without tau by then is censored
    :param sequence: successive regeneration times recorded per replica (the first one feeds the statistic)
    :raises InsufficientDataError: every replica is censored at some L
    """
    if kappa <= 0:
        raise PreconditionError(f'kappa must be positive, got {kappa}')
    if replicas <= 0:
        raise ConfigurationError('replicas', f'must be positive, got {replicas}')
    if sequence < 1:
        raise ConfigurationError('sequence', f'must be at least 1, got {sequence}')
    law = law or make_epsilon_law(direction, kappa)
    _check_law(env, direction, law, seed)
    patterns = tuple(build_pattern(direction, L, alpha) for L in scales)
    func = partial(
        _records_replica,
        env=env,
        patterns=patterns,
        law=law,
        horizon=horizon,
        seed=seed,
        fresh_env=fresh_env,
        sequence=sequence,
    )
    outcomes = replica_map(func, replicas, workers, progress, description='regeneration')
    points = []
    for k, pattern in enumerate(patterns):
        records = [o[k] for o in outcomes]
        values = [regeneration_statistic(r[0], direction, kappa) for r in records if not r[0].censored]
        censored = replicas - len(values)
        if not values:
            raise InsufficientDataError(f'All {replicas} replicas are censored at L={pattern.L}')
        if censored > CENSOR_WARNING_FRACTION * replicas:
            logger.warning('L=%s: %s of %s replicas censored at horizon %s', pattern.L, censored, replicas, horizon)
        points.append(
            SecondMoment(
                L=pattern.L,
                estimate=MCEstimate.from_samples(values, censored=censored),
                censor_fraction=censored / replicas,
                records=records,
            )
        )
    profile = SecondMomentProfile(points=points)
    if profile.flagged:
        logger.warning('Second moment estimates spread by a factor of %s across L', profile.spread)
    return profile

from itertools import accumulate
from typing import Callable
from typing import Dict
from typing import Iterator
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import Union

from attr import dataclass

from pyrwre.environment.abstract import AbstractEnvironment
from pyrwre.errors import ConfigurationError
from pyrwre.geometry.lattice import ZERO_SYMBOL
from pyrwre.geometry.lattice import Point
from pyrwre.geometry.lattice import unit_vectors
from pyrwre.geometry.regions import BoxSpec
from pyrwre.geometry.regions import ConeSpec
from pyrwre.geometry.regions import HalfSpaceSpec
from pyrwre.logging import logger
from pyrwre.rng import UniformStream
from pyrwre.walk.law import EpsilonLaw
from pyrwre.walk.law import index_from_uniform
from pyrwre.walk.law import symbol_from_uniform
from pyrwre.walk.trajectory import AugmentedTrajectory
from pyrwre.walk.trajectory import Mode
from pyrwre.walk.trajectory import StopCause
from pyrwre.walk.trajectory import StopKind

Step = Tuple[int, Point, Optional[int]]


@dataclass(kw_only=True, frozen=True)
class StopPredicate:
    """Named test over (position, time), fired at the first time it returns True."""

    name: str
    test: Callable[[Point, int], bool]

    def __call__(self, position: Point, time: int) -> bool:
        return self.test(position, time)


PredicateLike = Union[StopPredicate, Callable[[Point, int], bool]]


def exits_box(box: BoxSpec) -> StopPredicate:
    return StopPredicate(name='exits_box', test=lambda x, t: not box.contains(x))


def exits_cone(cone: ConeSpec) -> StopPredicate:
    return StopPredicate(name='exits_cone', test=lambda x, t: not cone.contains(x))


def enters_halfspace(h: HalfSpaceSpec) -> StopPredicate:
    return StopPredicate(name='enters_halfspace', test=lambda x, t: h.contains(x))


def at_time(n: int) -> StopPredicate:
    return StopPredicate(name=f'at_time({n})', test=lambda x, t: t >= n)


def _predicate_name(predicate: PredicateLike) -> str:
    return getattr(predicate, 'name', None) or getattr(predicate, '__name__', 'predicate')


class _KernelCache:
    """Per-run memo of cumulative quenched and residual probabilities by site."""

    def __init__(self, env: AbstractEnvironment, law: Optional[EpsilonLaw]) -> None:
        self.env = env
        self.law = law
        self._quenched: Dict[Point, Tuple[float, ...]] = {}
        self._residual: Dict[Point, Tuple[float, ...]] = {}

    def quenched(self, x: Point) -> Tuple[float, ...]:
        res = self._quenched.get(x)
        if res is None:
            res = self._quenched[x] = tuple(accumulate(self.env.kernel_at(x).probs))
        return res

    def residual(self, x: Point) -> Tuple[float, ...]:
        assert self.law is not None
        res = self._residual.get(x)
        if res is None:
            res = self._residual[x] = tuple(accumulate(self.law.residual(self.env.kernel_at(x))))
        return res


def iter_steps(
    env: AbstractEnvironment,
    start: Sequence[int],
    stream: UniformStream,
    law: Optional[EpsilonLaw] = None,
) -> Iterator[Step]:
    """Endless walk: yields (time, position after the step, symbol of the step).

    Quenched mode (law=None) uses one draw per step and yields symbol None. Augmented mode
    draws the symbol then the residual uniform, both always consumed.
    """
    moves = unit_vectors(env.d)
    cache = _KernelCache(env, law)
    x = tuple(start)
    t = 0
    while True:
        if law is None:
            index = index_from_uniform(cache.quenched(x), stream.uniform())
            symbol = None
        else:
            symbol = symbol_from_uniform(law, stream.uniform())
            u = stream.uniform()
            residual = cache.residual(x)
            index = symbol if symbol != ZERO_SYMBOL else index_from_uniform(residual, u)
        move = moves[index]
        x = tuple(a + b for a, b in zip(x, move))
        t += 1
        yield t, x, symbol


def run_until(
    env: AbstractEnvironment,
    start: Sequence[int],
    predicates: Sequence[PredicateLike],
    step_cap: Optional[int],
    stream: UniformStream,
    law: Optional[EpsilonLaw] = None,
    keep_path: bool = True,
) -> AugmentedTrajectory:
    """Run the walk until a stop predicate fires or the step cap is reached.

    Predicates are evaluated in declaration order at time 0 and after every step; the first
    one returning True ends the run. Reaching `step_cap` without a hit censors the run.

    :param env: environment to walk in
    :param start: starting lattice point
    :param predicates: ordered stop predicates over (position, time)
    :param step_cap: maximum number of steps, None for no cap
    :param stream: random stream of this replica
    :param law: epsilon law for augmented mode, None for quenched mode
    :param keep_path: keep every position and symbol, otherwise only the endpoints
    """
    if not predicates and step_cap is None:
        raise ConfigurationError('step_cap', 'a run needs stop predicates or a step cap')
    if step_cap is not None and step_cap < 1:
        raise ConfigurationError('step_cap', f'must be at least 1, got {step_cap}')

    x = tuple(start)
    positions: List[Point] = [x]
    eps: List[int] = []
    mode = Mode.quenched if law is None else Mode.augmented

    def finish(cause: StopCause, t: int, last: Point) -> AugmentedTrajectory:
        if not keep_path:
            positions.append(last)
        return AugmentedTrajectory(
            positions=positions,
            eps=eps,
            steps=t,
            stop_cause=cause,
            stream_id=stream.stream_id,
            mode=mode,
            full=keep_path,
        )

    def fired(position: Point, t: int) -> Optional[StopCause]:
        for i, predicate in enumerate(predicates):
            if predicate(position, t):
                return StopCause(kind=StopKind.predicate, index=i, name=_predicate_name(predicate))
        return None

    cause = fired(x, 0)
    if cause is not None:
        return finish(cause, 0, x)

    for t, x, symbol in iter_steps(env, start, stream, law):
        if keep_path:
            positions.append(x)
            if symbol is not None:
                eps.append(symbol)
        cause = fired(x, t)
        if cause is not None:
            return finish(cause, t, x)
        if step_cap is not None and t >= step_cap:
            logger.debug('Run censored at step cap %s', step_cap)
            return finish(StopCause(kind=StopKind.step_cap), t, x)
    raise RuntimeError('unreachable')

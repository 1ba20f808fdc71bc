from collections import deque
from typing import Deque
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from attr import dataclass

from pyrwre.environment.abstract import AbstractEnvironment
from pyrwre.errors import ConfigurationError
from pyrwre.errors import PreconditionError
from pyrwre.geometry.lattice import Point
from pyrwre.geometry.lattice import origin
from pyrwre.geometry.regions import ConeSpec
from pyrwre.logging import logger
from pyrwre.regeneration.pattern import PatternSpec
from pyrwre.regeneration.pattern import pattern_matcher
from pyrwre.rng import UniformStream
from pyrwre.walk.engine import iter_steps
from pyrwre.walk.engine import run_until
from pyrwre.walk.law import EpsilonLaw
from pyrwre.walk.trajectory import AugmentedTrajectory


@dataclass(kw_only=True)
class Attempt:
    """One S_k / R_k pair; `r` is None while the cone watch has not been exited."""

    s: int
    x_s: Point
    r: Optional[int] = None


@dataclass(kw_only=True, frozen=True)
class RegenerationRecord:
    L: int
    offset: int
    horizon: int
    attempts: List[Attempt]
    K: Optional[int]
    tau: Optional[int]
    x_tau: Optional[Point]

    @property
    def censored(self) -> bool:
        return self.tau is None


def cone_exit_time(traj: AugmentedTrajectory, cone: ConeSpec, from_index: int) -> Optional[int]:
    """D' of the path shifted to `from_index`, with the cone re-anchored at X_{from_index}.

    :returns: relative exit time, or None when the path stays inside until its end
    """
    if not traj.full:
        raise PreconditionError('Cone exit time needs a full trajectory')
    if not 0 <= from_index < len(traj.positions):
        raise PreconditionError(f'from_index={from_index} is outside the trajectory')
    anchored = cone.anchored(traj.positions[from_index])
    for n in range(from_index + 1, len(traj.positions)):
        if not anchored.contains(traj.positions[n]):
            return n - from_index
    return None


class RegenerationDetector:
    """Online S_k / R_k bookkeeping over a path fed one step at a time.

    At every time the cone watch of the pending attempt is handled first, then the search for
    the next S; record levels are compared exactly through X . u.
    """

    def __init__(self, pattern: PatternSpec, start: Point, offset: int = 0) -> None:
        self.pattern = pattern
        self.offset = offset
        self.time = offset
        self.matcher = pattern_matcher(pattern)
        self.state = 0
        self.cone = ConeSpec(vertex=tuple(start), dir=pattern.dir, alpha=pattern.alpha)
        self.window: Deque[Tuple[int, int]] = deque([(offset, pattern.dir.level(start))])
        self.max_before: Optional[int] = None
        self.attempts: List[Attempt] = []
        self.watch: Optional[ConeSpec] = None

    def feed(self, x: Point, symbol: int) -> None:
        """Advance by one step to position `x`, driven by `symbol`."""
        self.time += 1
        n = self.time
        self.state = self.matcher.step(self.state, symbol)
        self.window.append((n, self.pattern.dir.level(x)))
        if len(self.window) > self.pattern.L + 1:
            _, level = self.window.popleft()
            self.max_before = level if self.max_before is None else max(self.max_before, level)

        if self.watch is not None and not self.watch.contains(x):
            self.attempts[-1].r = n
            self.watch = None

        if self.watch is None and n - self.offset >= self.pattern.L and self.state == self.matcher.accepting:
            _, level = self.window[0]
            if self.max_before is None or level > self.max_before:
                self.attempts.append(Attempt(s=n, x_s=x))
                self.watch = self.cone.anchored(x)

    def finish(self) -> RegenerationRecord:
        horizon = self.time - self.offset
        if self.watch is None:
            return RegenerationRecord(
                L=self.pattern.L,
                offset=self.offset,
                horizon=horizon,
                attempts=self.attempts,
                K=None,
                tau=None,
                x_tau=None,
            )
        last = self.attempts[-1]
        return RegenerationRecord(
            L=self.pattern.L,
            offset=self.offset,
            horizon=horizon,
            attempts=self.attempts,
            K=len(self.attempts),
            tau=last.s,
            x_tau=last.x_s,
        )


def _check_law(pattern: PatternSpec, law: EpsilonLaw) -> None:
    if not set(pattern.symbols) <= set(law.eps_set):
        raise PreconditionError('Pattern symbols must belong to the epsilon set of the law')


def detect_in_trajectory(traj: AugmentedTrajectory, pattern: PatternSpec, offset: int = 0) -> RegenerationRecord:
    """Run the detector over a recorded augmented trajectory shifted to `offset`."""
    if not traj.full or len(traj.eps) != traj.steps:
        raise PreconditionError('Detection needs a full augmented trajectory')
    if not 0 <= offset <= traj.steps:
        raise PreconditionError(f'offset={offset} is outside the trajectory')
    detector = RegenerationDetector(pattern, traj.positions[offset], offset)
    for n in range(offset, traj.steps):
        detector.feed(traj.positions[n + 1], traj.eps[n])
    return detector.finish()


def detect_tau(
    env: AbstractEnvironment,
    pattern: PatternSpec,
    law: EpsilonLaw,
    horizon: int,
    stream: UniformStream,
    start: Optional[Sequence[int]] = None,
) -> RegenerationRecord:
    """tau^(L) of an augmented walk observed up to `horizon` steps, without storing the path.

    :raises ConfigurationError: horizon < L
    """
    if horizon < pattern.L:
        raise ConfigurationError('horizon', f'{horizon} is below the pattern length {pattern.L}')
    _check_law(pattern, law)
    x0 = tuple(start) if start is not None else origin(env.d)
    detector = RegenerationDetector(pattern, x0)
    for t, x, symbol in iter_steps(env, x0, stream, law):
        assert symbol is not None
        detector.feed(x, symbol)
        if t >= horizon:
            break
    record = detector.finish()
    logger.debug('tau=%s after %s attempts', record.tau, len(record.attempts))
    return record


def tau_sequence(
    env: AbstractEnvironment,
    pattern: PatternSpec,
    law: EpsilonLaw,
    count: int,
    horizon: int,
    stream: UniformStream,
    start: Optional[Sequence[int]] = None,
) -> List[RegenerationRecord]:
    """Successive approximate regeneration times over one path of `horizon` steps.

    The i-th record is detected on the path shifted to the (i-1)-th tau. The sequence stops
    after the first censored record, which is included.
    """
    if count < 0:
        raise PreconditionError(f'count must be nonnegative, got {count}')
    if count == 0:
        return []
    if horizon < pattern.L:
        raise ConfigurationError('horizon', f'{horizon} is below the pattern length {pattern.L}')
    _check_law(pattern, law)
    x0 = tuple(start) if start is not None else origin(env.d)
    traj = run_until(env, x0, [], horizon, stream, law=law)
    res: List[RegenerationRecord] = []
    offset = 0
    while len(res) < count:
        record = detect_in_trajectory(traj, pattern, offset)
        res.append(record)
        if record.tau is None:
            break
        offset = record.tau
    return res

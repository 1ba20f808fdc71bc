import math
from bisect import bisect_right
from enum import Enum
from itertools import accumulate
from typing import Sequence
from typing import Tuple

from attr import dataclass

from pyrwre.errors import InvalidLawError
from pyrwre.errors import NoRootError
from pyrwre.logging import logger

RECURRENCE_TOLERANCE = 1e-12
ROOT_TOLERANCE = 1e-12
KAPPA_CEILING = 64.0
MAX_BISECTIONS = 400

DEFAULT_VALUES = (0.75, 0.3)
DEFAULT_WEIGHTS = (0.6, 0.4)


class Transience(Enum):
    transient_plus = 'transient_plus'
    transient_minus = 'transient_minus'
    recurrent = 'recurrent'


@dataclass(kw_only=True, frozen=True)
class PLaw:
    """Finite-support law of the right-jump probability p, with rho = (1 - p) / p."""

    values: Tuple[float, ...]
    weights: Tuple[float, ...]

    def __attrs_post_init__(self) -> None:
        if not self.values or len(self.values) != len(self.weights):
            raise InvalidLawError('PLaw needs matching, non-empty values and weights')
        if any(not 0.0 < v < 1.0 for v in self.values):
            raise InvalidLawError(f'PLaw values must lie in (0, 1), got {self.values}')
        if any(w <= 0 for w in self.weights):
            raise InvalidLawError(f'PLaw weights must be positive, got {self.weights}')
        if abs(sum(self.weights) - 1.0) > 1e-12:
            raise InvalidLawError(f'PLaw weights must sum to 1, got {sum(self.weights)}')

    def rhos(self) -> Tuple[float, ...]:
        return tuple((1.0 - p) / p for p in self.values)

    def sample(self, u: float) -> float:
        """Inverse-CDF draw from one uniform."""
        index = bisect_right(list(accumulate(self.weights)), u)
        return self.values[min(index, len(self.values) - 1)]

    def moment(self, kappa: float) -> float:
        """E[rho^kappa]."""
        return sum(w * r**kappa for w, r in zip(self.weights, self.rhos()))

    def mean_log_rho(self) -> float:
        return sum(w * math.log(r) for w, r in zip(self.weights, self.rhos()))

    def min_value(self) -> float:
        return min(self.values)

    def to_json(self) -> dict:
        return {'values': list(self.values), 'weights': list(self.weights)}


def make_plaw(values: Sequence[float], weights: Sequence[float]) -> PLaw:
    """Build a PLaw, renormalizing the weights."""
    total = float(sum(weights))
    if total <= 0:
        raise InvalidLawError(f'PLaw weights must have a positive sum, got {list(weights)}')
    return PLaw(values=tuple(float(v) for v in values), weights=tuple(w / total for w in weights))


def default_plaw() -> PLaw:
    return make_plaw(DEFAULT_VALUES, DEFAULT_WEIGHTS)


def kks_kappa(law: PLaw) -> float:
    """Positive root of E[rho^kappa] = 1.

    The map kappa -> E[rho^kappa] - 1 is convex, vanishes at 0 and starts with slope E[ln rho];
    the root is bracketed by doubling kappa_max from 1 up to 64, then bisected.

    :raises NoRootError: E[ln rho] >= 0 or no sign change within (0, 64]
    """
    mean = law.mean_log_rho()
    if mean >= -RECURRENCE_TOLERANCE:
        raise NoRootError(f'E[ln rho] = {mean} is not negative')
    hi = 1.0
    while law.moment(hi) <= 1.0:
        hi *= 2
        if hi > KAPPA_CEILING:
            raise NoRootError(f'E[rho^k] < 1 for every k in (0, {KAPPA_CEILING:g}]')
    lo = 0.0
    mid = hi
    for _ in range(MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        value = law.moment(mid) - 1.0
        if abs(value) <= ROOT_TOLERANCE or hi - lo <= 1e-16:
            break
        if value < 0:
            lo = mid
        else:
            hi = mid
    logger.debug('kks root %s bracketed in (%s, %s)', mid, lo, hi)
    return mid


def solomon_transience(law: PLaw) -> Transience:
    mean = law.mean_log_rho()
    if mean < -RECURRENCE_TOLERANCE:
        return Transience.transient_plus
    if abs(mean) <= RECURRENCE_TOLERANCE:
        return Transience.recurrent
    return Transience.transient_minus

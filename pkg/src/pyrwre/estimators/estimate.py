import math
from typing import Sequence
from typing import Tuple

import numpy as np
from attr import dataclass

from pyrwre.environment.abstract import AbstractEnvironment
from pyrwre.errors import InsufficientDataError
from pyrwre.rng import ReplicaStream
from pyrwre.rng import derive_seed

Z95 = 1.96


@dataclass(kw_only=True, frozen=True)
class MCEstimate:
    """Monte Carlo mean with standard error sd / sqrt(n) and a normal 95% interval."""

    mean: float
    stderr: float
    n: int
    censored: int = 0

    @property
    def ci95(self) -> Tuple[float, float]:
        return self.mean - Z95 * self.stderr, self.mean + Z95 * self.stderr

    def covers(self, value: float, k: float = Z95) -> bool:
        return abs(self.mean - value) <= k * self.stderr

    def excludes_zero(self) -> bool:
        return self.ci95[0] > 0

    @classmethod
    def from_samples(cls, values: Sequence[float], censored: int = 0) -> 'MCEstimate':
        if len(values) == 0:
            raise InsufficientDataError('No samples')
        data = np.asarray(values, dtype=float)
        stderr = float(data.std(ddof=1) / math.sqrt(len(data))) if len(data) > 1 else 0.0
        return cls(mean=float(data.mean()), stderr=stderr, n=len(data), censored=censored)

    @classmethod
    def from_bernoulli(cls, successes: int, n: int, censored: int = 0) -> 'MCEstimate':
        if n <= 0:
            raise InsufficientDataError('No samples')
        p = successes / n
        stderr = math.sqrt(p * (1 - p) / (n - 1)) if n > 1 else 0.0
        return cls(mean=p, stderr=stderr, n=n, censored=censored)


def replica_stream(seed: int, label: str, index: int, *extra: int) -> ReplicaStream:
    return ReplicaStream(seed, label, index, *extra)


def replica_env(env: AbstractEnvironment, seed: int, index: int, fresh: bool) -> AbstractEnvironment:
    """The shared environment, or a fresh one derived from (seed, index)."""
    if not fresh:
        return env
    return env.with_seed(derive_seed(seed, 'environment', index))

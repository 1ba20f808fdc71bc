from itertools import accumulate
from typing import Sequence
from typing import Tuple

from attr import dataclass

from pyrwre.errors import InvalidLawError
from pyrwre.geometry.lattice import unit_vectors

SUM_TOLERANCE = 1e-12


@dataclass(kw_only=True, frozen=True)
class TransitionKernel:
    """Jump probabilities of one site, indexed by E = (+e1, -e1, +e2, -e2, ...)."""

    probs: Tuple[float, ...]

    def __attrs_post_init__(self) -> None:
        if len(self.probs) < 4 or len(self.probs) % 2:
            raise InvalidLawError(f'Kernel needs 2d >= 4 entries, got {len(self.probs)}')
        if any(x < 0 for x in self.probs):
            raise InvalidLawError(f'Kernel has negative entries: {self.probs}')
        if abs(sum(self.probs) - 1.0) > SUM_TOLERANCE:
            raise InvalidLawError(f'Kernel does not sum to 1: {self.probs}')

    def __getitem__(self, index: int) -> float:
        return self.probs[index]

    @property
    def d(self) -> int:
        return len(self.probs) // 2

    def cumulative(self) -> Tuple[float, ...]:
        return tuple(accumulate(self.probs))

    def drift(self) -> Tuple[float, ...]:
        res = [0.0] * self.d
        for p, e in zip(self.probs, unit_vectors(self.d)):
            for i, x in enumerate(e):
                res[i] += p * x
        return tuple(res)

    def min_over(self, indices: Sequence[int]) -> float:
        return min(self.probs[i] for i in indices)


def make_kernel(probs: Sequence[float]) -> TransitionKernel:
    return TransitionKernel(probs=tuple(float(x) for x in probs))


def uniform_kernel(d: int) -> TransitionKernel:
    return make_kernel([1.0 / (2 * d)] * (2 * d))

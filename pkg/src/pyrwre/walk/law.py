from bisect import bisect_right
from itertools import accumulate
from typing import Tuple

from attr import dataclass

from pyrwre.environment.kernel import TransitionKernel
from pyrwre.errors import EllipticityError
from pyrwre.errors import InvalidLawError
from pyrwre.geometry.direction import DirectionSpec
from pyrwre.geometry.direction import epsilon_set
from pyrwre.geometry.lattice import ZERO_SYMBOL
from pyrwre.rng import UniformStream


@dataclass(kw_only=True, frozen=True)
class EpsilonLaw:
    """Law Q of the i.i.d. symbols: kappa on every e in the epsilon set, 1 - kappa |E| on 0."""

    kappa: float
    eps_set: Tuple[int, ...]

    def __attrs_post_init__(self) -> None:
        if not self.eps_set:
            raise InvalidLawError('Epsilon set is empty')
        if self.kappa <= 0:
            raise InvalidLawError(f'kappa must be positive, got {self.kappa}')
        if self.kappa * len(self.eps_set) >= 1:
            raise InvalidLawError(f'kappa * |E| = {self.kappa * len(self.eps_set)} must be below 1')

    @property
    def zero_weight(self) -> float:
        return 1.0 - self.kappa * len(self.eps_set)

    @property
    def alphabet(self) -> Tuple[int, ...]:
        return (*self.eps_set, ZERO_SYMBOL)

    def weight(self, symbol: int) -> float:
        if symbol == ZERO_SYMBOL:
            return self.zero_weight
        return self.kappa if symbol in self.eps_set else 0.0

    def residual(self, kernel: TransitionKernel) -> Tuple[float, ...]:
        """Residual kernel (kernel(e) - kappa 1{e in E}) / (1 - kappa |E|).

        :raises EllipticityError: kernel(e) < kappa for some e in the epsilon set
        """
        probs = list(kernel.probs)
        for e in self.eps_set:
            if probs[e] < self.kappa:
                raise EllipticityError(f'kernel({e}) = {probs[e]} is below kappa = {self.kappa}')
            probs[e] -= self.kappa
        norm = self.zero_weight
        return tuple(p / norm for p in probs)


def make_epsilon_law(direction: DirectionSpec, kappa: float) -> EpsilonLaw:
    return EpsilonLaw(kappa=kappa, eps_set=epsilon_set(direction))


def symbol_from_uniform(law: EpsilonLaw, u: float) -> int:
    index = int(u / law.kappa)
    if index < len(law.eps_set):
        return law.eps_set[index]
    return ZERO_SYMBOL


def index_from_uniform(cumulative: Tuple[float, ...], u: float) -> int:
    return min(bisect_right(cumulative, u), len(cumulative) - 1)


def sample_epsilon(law: EpsilonLaw, stream: UniformStream) -> int:
    """One symbol from Q, consuming exactly one draw."""
    return symbol_from_uniform(law, stream.uniform())


def step_augmented(kernel: TransitionKernel, symbol: int, law: EpsilonLaw, stream: UniformStream) -> int:
    """Displacement index of one augmented step.

    The residual draw is consumed even when the symbol forces the step.
    """
    residual = law.residual(kernel)
    u = stream.uniform()
    if symbol != ZERO_SYMBOL:
        return symbol
    return index_from_uniform(tuple(accumulate(residual)), u)

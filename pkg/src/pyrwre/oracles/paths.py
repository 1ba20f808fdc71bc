from itertools import product
from typing import Dict
from typing import Optional
from typing import Sequence
from typing import Tuple

from attr import dataclass

from pyrwre.environment.abstract import AbstractEnvironment
from pyrwre.errors import SizeGuardError
from pyrwre.geometry.lattice import ZERO_SYMBOL
from pyrwre.geometry.lattice import Point
from pyrwre.geometry.lattice import unit_vectors
from pyrwre.walk.law import EpsilonLaw

MAX_ENUMERATION_STEPS = 6

Path = Tuple[Point, ...]


@dataclass(kw_only=True, frozen=True)
class PathLaw:
    """Exact law of the first n steps: nearest-neighbour paths X_0..X_n mapped to probabilities."""

    start: Point
    n: int
    probs: Dict[Path, float]

    def total(self) -> float:
        return sum(self.probs.values())

    def __getitem__(self, path: Path) -> float:
        return self.probs.get(path, 0.0)


def _paths(start: Point, n: int) -> Dict[Path, Tuple[int, ...]]:
    moves = unit_vectors(len(start))
    res = {}
    for indices in product(range(len(moves)), repeat=n):
        x = start
        path = [x]
        for i in indices:
            x = tuple(a + b for a, b in zip(x, moves[i]))
            path.append(x)
        res[tuple(path)] = indices
    return res


def enumerate_path_law(
    env: AbstractEnvironment,
    start: Sequence[int],
    n: int,
    law: Optional[EpsilonLaw] = None,
) -> PathLaw:
    """Law of the first n steps by full enumeration.

    Quenched mode (law=None) multiplies kernel entries along every path. Augmented mode sums,
    for every path, over all symbol streams of the product of Q-weights and augmented step
    probabilities, which yields the symbol-marginalized path law.

    :raises SizeGuardError: n above the enumeration guard
    """
    if n > MAX_ENUMERATION_STEPS:
        raise SizeGuardError(f'n={n} exceeds the enumeration guard {MAX_ENUMERATION_STEPS}')
    if n < 0:
        raise SizeGuardError(f'n must be nonnegative, got {n}')
    x0 = tuple(start)
    kernels: Dict[Point, Tuple[float, ...]] = {}
    residuals: Dict[Point, Tuple[float, ...]] = {}

    def kernel(x: Point) -> Tuple[float, ...]:
        if x not in kernels:
            kernels[x] = env.kernel_at(x).probs
        return kernels[x]

    def residual(x: Point) -> Tuple[float, ...]:
        assert law is not None
        if x not in residuals:
            residuals[x] = law.residual(env.kernel_at(x))
        return residuals[x]

    probs: Dict[Path, float] = {}
    streams = list(product(law.alphabet, repeat=n)) if law is not None else []
    for path, indices in _paths(x0, n).items():
        if law is None:
            value = 1.0
            for x, i in zip(path, indices):
                value *= kernel(x)[i]
        else:
            value = 0.0
            for stream in streams:
                term = 1.0
                for x, i, symbol in zip(path, indices, stream):
                    if symbol == ZERO_SYMBOL:
                        term *= law.zero_weight * residual(x)[i]
                    elif symbol == i:
                        term *= law.kappa
                    else:
                        term = 0.0
                    if term == 0.0:
                        break
                value += term
        if value > 0:
            probs[path] = value
    return PathLaw(start=x0, n=n, probs=probs)


def total_variation(a: PathLaw, b: PathLaw) -> float:
    keys = set(a.probs) | set(b.probs)
    return 0.5 * sum(abs(a[k] - b[k]) for k in keys)

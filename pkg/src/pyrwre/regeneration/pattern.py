from fractions import Fraction
from typing import Dict
from typing import List
from typing import Sequence
from typing import Tuple

from attr import dataclass
from attr import field

from pyrwre.errors import ConeViolationError
from pyrwre.errors import PatternLengthError
from pyrwre.errors import PreconditionError
from pyrwre.geometry.direction import DirectionSpec
from pyrwre.geometry.lattice import ZERO_SYMBOL
from pyrwre.geometry.lattice import Point
from pyrwre.geometry.lattice import origin
from pyrwre.geometry.lattice import symbol_name
from pyrwre.geometry.lattice import unit_index
from pyrwre.geometry.lattice import unit_vectors
from pyrwre.geometry.regions import AlphaLike
from pyrwre.geometry.regions import ConeSpec
from pyrwre.geometry.regions import to_fraction


@dataclass(kw_only=True, frozen=True)
class PatternSpec:
    """Forced-step pattern of length L: the period concatenated L / p times."""

    dir: DirectionSpec
    L: int
    alpha: Fraction = field(converter=to_fraction)
    symbols: Tuple[int, ...]

    @property
    def period(self) -> Tuple[int, ...]:
        return self.symbols[: self.dir.p]

    def displacement(self) -> Point:
        res = [0] * self.dir.d
        moves = unit_vectors(self.dir.d)
        for s in self.symbols:
            for i, x in enumerate(moves[s]):
                res[i] += x
        return tuple(res)

    def names(self) -> List[str]:
        return [symbol_name(s) for s in self.symbols]


def period_symbols(direction: DirectionSpec) -> Tuple[int, ...]:
    """|u_1| copies of sgn(u_1) e_1, then |u_2| copies of sgn(u_2) e_2, and so on."""
    res: List[int] = []
    for axis, x in enumerate(direction.u):
        if x:
            res.extend([unit_index(axis, 1 if x > 0 else -1)] * abs(x))
    return tuple(res)


def build_pattern(direction: DirectionSpec, L: int, alpha: AlphaLike) -> PatternSpec:
    """Build the length-L pattern for `direction`.

    :raises PatternLengthError: L is not a positive multiple of |u|_1
    :raises ConeViolationError: a partial sum leaves C(0, l, alpha); `prefix` is its length
    """
    if direction.u[0] == 0:
        raise PreconditionError(f'Pattern needs a direction with l_1 != 0, got u={list(direction.u)}')
    if L <= 0 or L % direction.p:
        raise PatternLengthError(f'L={L} is not a positive multiple of p={direction.p}')
    symbols = period_symbols(direction) * (L // direction.p)
    cone = ConeSpec(vertex=origin(direction.d), dir=direction, alpha=alpha)
    moves = unit_vectors(direction.d)
    x = origin(direction.d)
    for k, s in enumerate(symbols, start=1):
        x = tuple(a + b for a, b in zip(x, moves[s]))
        if not cone.contains(x):
            raise ConeViolationError(f'Partial sum {x} of length {k} leaves the cone', k)
    return PatternSpec(dir=direction, L=L, alpha=cone.alpha, symbols=symbols)


class PatternMatcher:
    """Prefix-function automaton over symbols; state k means the last k symbols match the pattern prefix."""

    def __init__(self, pattern: Sequence[int], alphabet: Sequence[int]) -> None:
        if not pattern:
            raise PreconditionError('Pattern must not be empty')
        self.pattern = tuple(pattern)
        self.alphabet = tuple(sorted(set(alphabet) | set(pattern)))
        self.failure = self._prefix_function(self.pattern)
        self.table: List[Dict[int, int]] = []
        for state in range(len(self.pattern) + 1):
            row = {}
            for c in self.alphabet:
                if state < len(self.pattern) and self.pattern[state] == c:
                    row[c] = state + 1
                elif state == 0:
                    row[c] = 0
                else:
                    row[c] = self.table[self.failure[state - 1]][c]
            self.table.append(row)

    @staticmethod
    def _prefix_function(pattern: Tuple[int, ...]) -> List[int]:
        res = [0] * len(pattern)
        k = 0
        for i in range(1, len(pattern)):
            while k and pattern[i] != pattern[k]:
                k = res[k - 1]
            if pattern[i] == pattern[k]:
                k += 1
            res[i] = k
        return res

    @property
    def accepting(self) -> int:
        return len(self.pattern)

    def step(self, state: int, symbol: int) -> int:
        return self.table[state][symbol]


def pattern_matcher(pattern: PatternSpec) -> PatternMatcher:
    alphabet = (*range(2 * pattern.dir.d), ZERO_SYMBOL)
    return PatternMatcher(pattern.symbols, alphabet)

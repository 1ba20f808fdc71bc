import math
from typing import List
from typing import Sequence
from typing import Tuple

import numpy as np
from attr import dataclass

from pyrwre.errors import InvalidDirectionError
from pyrwre.geometry.lattice import Point
from pyrwre.geometry.lattice import dot
from pyrwre.geometry.lattice import unit_index

PARALLEL_THRESHOLD = 1e-8


@dataclass(kw_only=True, frozen=True)
class DirectionSpec:
    """Rational direction l = u / |u|_2 with an orthogonal frame R, R e1 = l."""

    u: Point
    q: float
    l: Tuple[float, ...]
    p: int
    R: Tuple[Tuple[float, ...], ...]

    @property
    def d(self) -> int:
        return len(self.u)

    def column(self, i: int) -> Tuple[float, ...]:
        """R e_{i+1} (zero-based column index)."""
        return tuple(row[i] for row in self.R)

    def matrix(self) -> np.ndarray:
        return np.array(self.R, dtype=float)

    def rotated(self, z: Sequence[float]) -> Tuple[float, ...]:
        """Coordinates of z in the frame R (R^T z); the first one is z . l."""
        return tuple(sum(self.R[k][i] * z[k] for k in range(self.d)) for i in range(self.d))

    def level(self, z: Sequence[int]) -> int:
        """Exact integer projection z . u (= q * z . l)."""
        return sum(a * b for a, b in zip(self.u, z))

    def projection(self, z: Sequence[float]) -> float:
        return dot(self.l, z)

    def to_json(self) -> List[int]:
        return list(self.u)


def _gram_schmidt(l: np.ndarray) -> np.ndarray:
    d = len(l)
    basis = [l]
    for i in range(d):
        if len(basis) == d:
            break
        candidate = np.zeros(d)
        candidate[i] = 1.0
        for b in basis:
            candidate = candidate - np.dot(candidate, b) * b
        norm = np.linalg.norm(candidate)
        if norm < PARALLEL_THRESHOLD:
            continue
        basis.append(candidate / norm)
    return np.column_stack(basis)


def make_direction(u: Sequence[int]) -> DirectionSpec:
    """Build the direction spanned by an integer vector.

    :param u: integer vector, not all zero, at least two components
    :raises InvalidDirectionError: zero vector, non-integer entries or d < 2
    """
    if len(u) < 2:
        raise InvalidDirectionError(f'Direction needs d >= 2 components, got {list(u)}')
    if any(int(x) != x for x in u):
        raise InvalidDirectionError(f'Direction must have integer components, got {list(u)}')
    u = tuple(int(x) for x in u)
    if not any(u):
        raise InvalidDirectionError('Direction must not be the zero vector')

    q = math.sqrt(sum(x * x for x in u))
    l = np.array(u, dtype=float) / q
    R = _gram_schmidt(l)
    return DirectionSpec(
        u=u,
        q=q,
        l=tuple(float(x) for x in l),
        p=sum(abs(x) for x in u),
        R=tuple(tuple(float(x) for x in row) for row in R),
    )


def epsilon_set(direction: DirectionSpec) -> Tuple[int, ...]:
    """Indices (into E) of sgn(l_i) e_i, zero components dropped."""
    res = tuple(unit_index(i, 1 if x > 0 else -1) for i, x in enumerate(direction.u) if x != 0)
    if not res:
        raise InvalidDirectionError('Epsilon set is empty')
    return res


def tilted_directions(direction: DirectionSpec, alpha: float) -> List[Tuple[Tuple[float, ...], Tuple[float, ...]]]:
    """Unit face normals (l+i, l-i) for i in [2, d]."""
    l = np.array(direction.l)
    res = []
    for i in range(1, direction.d):
        r = np.array(direction.column(i))
        plus = l + alpha * r
        minus = l - alpha * r
        res.append(
            (
                tuple(float(x) for x in plus / np.linalg.norm(plus)),
                tuple(float(x) for x in minus / np.linalg.norm(minus)),
            )
        )
    return res


def neighbor_directions(direction: DirectionSpec, alpha: float, denominator: int) -> List[DirectionSpec]:
    """Rational approximants of l+i and l-i, scaled by `denominator` and rounded to integers."""
    if denominator < 1:
        raise InvalidDirectionError(f'Denominator must be positive, got {denominator}')
    res = []
    for pair in tilted_directions(direction, alpha):
        for normal in pair:
            res.append(make_direction([int(round(denominator * x)) for x in normal]))
    return res

from enum import Enum
from fractions import Fraction
from typing import Sequence
from typing import Tuple
from typing import Union

from attr import dataclass
from attr import field

from pyrwre.errors import PreconditionError
from pyrwre.geometry.direction import DirectionSpec
from pyrwre.geometry.direction import tilted_directions
from pyrwre.geometry.lattice import Point
from pyrwre.geometry.lattice import dot
from pyrwre.geometry.lattice import unit_vectors

AlphaLike = Union[Fraction, float, int, str]


def to_fraction(alpha: AlphaLike) -> Fraction:
    """Exact opening parameter; floats are snapped to the nearest small-denominator fraction."""
    if isinstance(alpha, Fraction):
        return alpha
    if isinstance(alpha, str):
        return Fraction(alpha)
    return Fraction(alpha).limit_denominator(10**9)


def _is_axis_frame(direction: DirectionSpec) -> bool:
    return all(x in (0.0, 1.0, -1.0) for row in direction.R for x in row)


class ExitClass(Enum):
    interior = 'interior'
    positive_boundary = 'positive_boundary'
    other_boundary = 'other_boundary'
    outside = 'outside'


@dataclass(kw_only=True, frozen=True)
class ConeSpec:
    """C(vertex, l, alpha): the points z with (z - vertex) . l_{+-i} >= 0 for every i in [2, d]."""

    vertex: Point
    dir: DirectionSpec
    alpha: Fraction = field(converter=to_fraction)
    normals: Tuple[Tuple[float, ...], ...] = field(init=False)
    exact: bool = field(init=False)

    def __attrs_post_init__(self) -> None:
        if not 0 < self.alpha <= 1:
            raise PreconditionError(f'Cone opening must lie in (0, 1], got {self.alpha}')
        normals = []
        for plus, minus in tilted_directions(self.dir, float(self.alpha)):
            normals.extend((plus, minus))
        object.__setattr__(self, 'normals', tuple(normals))
        object.__setattr__(self, 'exact', _is_axis_frame(self.dir))

    def anchored(self, vertex: Point) -> 'ConeSpec':
        return ConeSpec(vertex=tuple(vertex), dir=self.dir, alpha=self.alpha)

    def contains(self, z: Sequence[int]) -> bool:
        delta = [a - b for a, b in zip(z, self.vertex)]
        if self.exact:
            # axis-aligned frame: a = delta . l and b_i = delta . R e_i are integers
            R = self.dir.R
            d = len(delta)
            a = sum(R[k][0] * delta[k] for k in range(d))
            for i in range(1, d):
                b = sum(R[k][i] * delta[k] for k in range(d))
                if a * self.alpha.denominator < self.alpha.numerator * abs(b):
                    return False
            return True
        return all(dot(delta, n) >= 0 for n in self.normals)


def cone_contains(cone: ConeSpec, z: Sequence[int]) -> bool:
    return cone.contains(z)


@dataclass(kw_only=True, frozen=True)
class BoxSpec:
    """B_{L,Lp,l}(center): lattice points whose rotated coordinates lie in (-L, L) x (-Lp, Lp)^(d-1)."""

    center: Point
    L: float
    Lp: float
    dir: DirectionSpec

    def __attrs_post_init__(self) -> None:
        if self.L <= 0 or self.Lp <= 0:
            raise PreconditionError(f'Box sizes must be positive, got L={self.L}, Lp={self.Lp}')

    def contains(self, z: Sequence[int]) -> bool:
        delta = [a - b for a, b in zip(z, self.center)]
        coords = self.dir.rotated(delta)
        if not -self.L < coords[0] < self.L:
            return False
        return all(-self.Lp < c < self.Lp for c in coords[1:])

    def exit_class(self, z: Sequence[int]) -> ExitClass:
        if self.contains(z):
            return ExitClass.interior
        z = tuple(z)
        in_boundary = any(self.contains(tuple(a + b for a, b in zip(z, e))) for e in unit_vectors(len(z)))
        if not in_boundary:
            return ExitClass.outside
        delta = [a - b for a, b in zip(z, self.center)]
        if self.dir.projection(delta) >= self.L:
            return ExitClass.positive_boundary
        return ExitClass.other_boundary


def box_exit_class(box: BoxSpec, z: Sequence[int]) -> ExitClass:
    return box.exit_class(z)


@dataclass(kw_only=True, frozen=True)
class HalfSpaceSpec:
    """H_{anchor,l} = {y : y . l < anchor . l}, compared exactly through u."""

    anchor: Point
    dir: DirectionSpec

    def contains(self, z: Sequence[int]) -> bool:
        return self.dir.level(z) < self.dir.level(self.anchor)


def halfspace_contains(h: HalfSpaceSpec, z: Sequence[int]) -> bool:
    return h.contains(z)

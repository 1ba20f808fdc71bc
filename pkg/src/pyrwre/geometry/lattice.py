from functools import lru_cache
from typing import Sequence
from typing import Tuple

Point = Tuple[int, ...]

ZERO_SYMBOL = -1


@lru_cache(maxsize=None)
def unit_vectors(d: int) -> Tuple[Point, ...]:
    """Canonical order of E: +e1, -e1, +e2, -e2, ..."""
    res = []
    for axis in range(d):
        for sign in (1, -1):
            res.append(tuple(sign if i == axis else 0 for i in range(d)))
    return tuple(res)


def unit_index(axis: int, sign: int) -> int:
    return 2 * axis + (0 if sign > 0 else 1)


def unit_axis_sign(index: int) -> Tuple[int, int]:
    return index // 2, 1 if index % 2 == 0 else -1


def symbol_name(symbol: int) -> str:
    if symbol == ZERO_SYMBOL:
        return '0'
    axis, sign = unit_axis_sign(symbol)
    return f'{"+" if sign > 0 else "-"}e{axis + 1}'


def parse_symbol(name: str) -> int:
    if name == '0':
        return ZERO_SYMBOL
    if len(name) < 3 or name[0] not in '+-' or name[1] != 'e':
        raise ValueError(f'Unknown symbol `{name}`')
    return unit_index(int(name[2:]) - 1, 1 if name[0] == '+' else -1)


def dot(a: Sequence[float], b: Sequence[float]) -> float:
    return sum(x * y for x, y in zip(a, b))


def sub(a: Point, b: Point) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def add(a: Point, b: Point) -> Point:
    return tuple(x + y for x, y in zip(a, b))


def origin(d: int) -> Point:
    return (0,) * d

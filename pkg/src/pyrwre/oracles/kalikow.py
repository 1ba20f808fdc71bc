from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np
from attr import dataclass

from pyrwre.environment.abstract import AbstractEnvironment
from pyrwre.errors import AbsorbingDefectError
from pyrwre.errors import PreconditionError
from pyrwre.geometry.direction import DirectionSpec
from pyrwre.geometry.lattice import Point
from pyrwre.geometry.lattice import dot
from pyrwre.geometry.lattice import origin
from pyrwre.geometry.lattice import unit_vectors

CONDITION_LIMIT = 1e12

Realization = Tuple[float, AbstractEnvironment]


@dataclass(kw_only=True, frozen=True)
class KalikowKernel:
    """Occupation-weighted average kernel on a finite set V."""

    sites: Tuple[Point, ...]
    probs: Dict[Point, Tuple[float, ...]]
    green_mass: Dict[Point, float]

    def drift(self, x: Point) -> Tuple[float, ...]:
        d = len(x)
        res = [0.0] * d
        for p, e in zip(self.probs[x], unit_vectors(d)):
            for i, c in enumerate(e):
                res[i] += p * c
        return tuple(res)

    def drifts(self) -> Dict[Point, Tuple[float, ...]]:
        return {x: self.drift(x) for x in self.sites}


@dataclass(kw_only=True, frozen=True)
class ExitLaw:
    kalikow: Dict[Point, float]
    annealed: Dict[Point, float]

    def max_difference(self) -> float:
        keys = set(self.kalikow) | set(self.annealed)
        return max(abs(self.kalikow.get(k, 0.0) - self.annealed.get(k, 0.0)) for k in keys)


def _check_domain(V: Sequence[Sequence[int]], start: Point) -> Tuple[Tuple[Point, ...], Dict[Point, int]]:
    sites = tuple(dict.fromkeys(tuple(x) for x in V))
    index = {x: i for i, x in enumerate(sites)}
    if start not in index:
        raise PreconditionError(f'Start {start} must belong to V')
    moves = unit_vectors(len(start))
    seen = {start}
    frontier = [start]
    while frontier:
        x = frontier.pop()
        for e in moves:
            y = tuple(a + b for a, b in zip(x, e))
            if y in index and y not in seen:
                seen.add(y)
                frontier.append(y)
    if len(seen) != len(sites):
        raise PreconditionError('V must be connected')
    return sites, index


def _substochastic(probs: Sequence[Sequence[float]], sites: Sequence[Point], index: Dict[Point, int]) -> np.ndarray:
    moves = unit_vectors(len(sites[0]))
    res = np.zeros((len(sites), len(sites)))
    for i, x in enumerate(sites):
        for p, e in zip(probs[i], moves):
            j = index.get(tuple(a + b for a, b in zip(x, e)))
            if j is not None:
                res[i, j] += p
    return res


def green_function(
    probs: Sequence[Sequence[float]],
    sites: Sequence[Point],
    index: Dict[Point, int],
    start: Point,
) -> np.ndarray:
    """Expected visits to every site of V before leaving V: solves (I - P_V)^T g = delta_start.

    :raises AbsorbingDefectError: the walk cannot leave V
    """
    P = _substochastic(probs, sites, index)
    A = (np.eye(len(sites)) - P).T
    delta = np.zeros(len(sites))
    delta[index[start]] = 1.0
    try:
        if np.linalg.cond(A) > CONDITION_LIMIT:
            raise np.linalg.LinAlgError('ill-conditioned')
        g = np.linalg.solve(A, delta)
    except np.linalg.LinAlgError as e:
        raise AbsorbingDefectError('Walk cannot leave V under some realization') from e
    return g


def _normalized(realizations: Sequence[Realization]) -> List[Realization]:
    if not realizations:
        raise PreconditionError('At least one realization is required')
    total = sum(w for w, _ in realizations)
    if total <= 0 or any(w < 0 for w, _ in realizations):
        raise PreconditionError('Realization weights must be nonnegative with a positive sum')
    return [(w / total, env) for w, env in realizations]


def _site_probs(env: AbstractEnvironment, sites: Sequence[Point]) -> List[Tuple[float, ...]]:
    return [env.kernel_at(x).probs for x in sites]


def kalikow_kernel(
    realizations: Sequence[Realization],
    V: Sequence[Sequence[int]],
    start: Optional[Sequence[int]] = None,
) -> KalikowKernel:
    """Kalikow's kernel on V from a weighted finite set of environments.

    For every realization the Green function g of the walk killed on leaving V is solved
    exactly; the kernel at x is sum_r w_r g_r(x) omega_r(x, .) / sum_r w_r g_r(x).
    """
    weighted = _normalized(realizations)
    x0 = tuple(start) if start is not None else origin(weighted[0][1].d)
    sites, index = _check_domain(V, x0)
    num = np.zeros((len(sites), 2 * len(x0)))
    den = np.zeros(len(sites))
    for w, env in weighted:
        probs = np.array(_site_probs(env, sites))
        g = green_function(probs, sites, index, x0)
        num += w * g[:, None] * probs
        den += w * g
    if np.any(den <= 0):
        raise PreconditionError('Some site of V is never visited')
    kernel = num / den[:, None]
    return KalikowKernel(
        sites=sites,
        probs={x: tuple(float(p) for p in kernel[i]) for i, x in enumerate(sites)},
        green_mass={x: float(den[i]) for i, x in enumerate(sites)},
    )


def _exit_distribution(
    probs: np.ndarray,
    g: np.ndarray,
    sites: Sequence[Point],
    index: Dict[Point, int],
) -> Dict[Point, float]:
    moves = unit_vectors(len(sites[0]))
    res: Dict[Point, float] = {}
    for i, x in enumerate(sites):
        for k, e in enumerate(moves):
            y = tuple(a + b for a, b in zip(x, e))
            if y not in index:
                res[y] = res.get(y, 0.0) + float(g[i] * probs[i][k])
    return res


def kalikow_exit_law(
    realizations: Sequence[Realization],
    V: Sequence[Sequence[int]],
    start: Optional[Sequence[int]] = None,
) -> ExitLaw:
    """Exit distribution on the outer boundary of V under Kalikow's walk and under the weighted mixture."""
    weighted = _normalized(realizations)
    x0 = tuple(start) if start is not None else origin(weighted[0][1].d)
    sites, index = _check_domain(V, x0)
    annealed: Dict[Point, float] = {}
    for w, env in weighted:
        probs = np.array(_site_probs(env, sites))
        g = green_function(probs, sites, index, x0)
        for y, p in _exit_distribution(probs, g, sites, index).items():
            annealed[y] = annealed.get(y, 0.0) + w * p
    kernel = kalikow_kernel(realizations, V, x0)
    probs = np.array([kernel.probs[x] for x in sites])
    g = green_function(probs, sites, index, x0)
    return ExitLaw(kalikow=_exit_distribution(probs, g, sites, index), annealed=annealed)


def kalikow_condition_margin(kernel: KalikowKernel, direction: DirectionSpec) -> float:
    """min over x in V of the Kalikow drift projected on l."""
    return min(dot(kernel.drift(x), direction.l) for x in kernel.sites)


def box_sites(radius: int, d: int = 2) -> List[Point]:
    """Sites of the cube [-radius, radius]^d."""
    res: List[Point] = [()]
    for _ in range(d):
        res = [x + (c,) for x in res for c in range(-radius, radius + 1)]
    return res

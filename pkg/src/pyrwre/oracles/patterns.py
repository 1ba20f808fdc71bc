"""Exact symbol-stream probabilities for the forced-step pattern.

D_{0,n} is the event that no window (eps_m, ..., eps_{m+L-1}) with 0 <= m <= n - L + 1 equals
the pattern; it constrains n - L + 2 windows over the n + 1 symbols eps_0..eps_n. Everything
here is computed in numpy extended precision.
"""

from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np
from attr import dataclass

from pyrwre.errors import InsufficientDataError
from pyrwre.errors import PreconditionError
from pyrwre.regeneration.pattern import PatternMatcher
from pyrwre.regeneration.pattern import PatternSpec
from pyrwre.walk.law import EpsilonLaw


@dataclass(kw_only=True, frozen=True)
class AvoidanceResult:
    value: float
    n: int
    windows: int


def _symbols(pattern) -> Tuple[int, ...]:
    symbols = tuple(pattern.symbols) if isinstance(pattern, PatternSpec) else tuple(pattern)
    if not symbols:
        raise PreconditionError('Pattern length must be at least 1')
    return symbols


def _transfer(symbols: Tuple[int, ...], law: EpsilonLaw) -> np.ndarray:
    """Substochastic transfer matrix over matcher states 0..L-1; reaching L kills the mass."""
    matcher = PatternMatcher(symbols, law.alphabet)
    L = len(symbols)
    res = np.zeros((L, L), dtype=np.longdouble)
    for state in range(L):
        for c in law.alphabet:
            weight = law.weight(c)
            if weight == 0:
                continue
            nxt = matcher.step(state, c)
            if nxt < L:
                res[state, nxt] += np.longdouble(weight)
    return res


def pattern_avoidance_curve(pattern, law: EpsilonLaw, n_max: int) -> List[float]:
    """Q[D_{0,n}] for n = 0..n_max in a single pass."""
    symbols = _symbols(pattern)
    transfer = _transfer(symbols, law)
    dist = np.zeros(len(symbols), dtype=np.longdouble)
    dist[0] = 1
    res = []
    for _ in range(n_max + 1):
        dist = dist @ transfer
        res.append(float(dist.sum()))
    return res


def pattern_avoidance_prob(pattern, law: EpsilonLaw, n: int) -> AvoidanceResult:
    """Exact Q[D_{0,n}] by the prefix-automaton dynamic programme."""
    symbols = _symbols(pattern)
    L = len(symbols)
    windows = max(0, n - L + 2)
    if windows == 0:
        return AvoidanceResult(value=1.0, n=n, windows=0)
    return AvoidanceResult(value=pattern_avoidance_curve(symbols, law, n)[n], n=n, windows=windows)


def _word_weight(word: Sequence[int], law: EpsilonLaw) -> np.longdouble:
    res = np.longdouble(1)
    for c in word:
        res *= np.longdouble(law.weight(c))
    return res


def pairwise_occurrence_sum(pattern, law: EpsilonLaw, span: Optional[int] = None) -> float:
    """Exact sum over 0 <= j1 < j2 <= span of Q[A_{j1} and A_{j2}].

    A_j is the event that the window starting at j equals the pattern; span defaults to L^2 - L.
    Windows at offset delta < L intersect only if the pattern has period delta.
    """
    symbols = _symbols(pattern)
    L = len(symbols)
    j = L * L - L if span is None else span
    total = np.longdouble(0)
    for delta in range(1, j + 1):
        pairs = j + 1 - delta
        if delta >= L:
            joint = _word_weight(symbols, law) ** 2
        elif all(symbols[i] == symbols[i + delta] for i in range(L - delta)):
            joint = _word_weight(symbols + symbols[L - delta :], law)  # noqa: E203
        else:
            continue
        total += pairs * joint
    return float(total)


def inclusion_exclusion_bound(pattern, law: EpsilonLaw) -> float:
    """First-order lower bound (L^2 - L + 1) kappa^L - pairwise for Q[complement of D_{0,L^2}]."""
    symbols = _symbols(pattern)
    L = len(symbols)
    single = _word_weight(symbols, law)
    return float((L * L - L + 1) * single) - pairwise_occurrence_sum(symbols, law)


def fit_pairwise_constant(grid: Sequence[Tuple[int, float, float]]) -> float:
    """Smallest c with pairwise <= c L^2 kappa^L over (L, kappa, pairwise) triples."""
    if not grid:
        raise InsufficientDataError('Empty grid')
    return max(pairwise / (L * L * kappa**L) for L, kappa, pairwise in grid)

from typing import List
from typing import Sequence

import numpy as np

from pyrwre.environment.abstract import AbstractEnvironment
from pyrwre.errors import PreconditionError


def chung_hitting(p_values: Sequence[float], start: int, a: int, b: int) -> float:
    """Probability that the birth-death chain started at `start` hits a before b.

    The chain jumps right with probability p_i at site i. With rho_m = (1 - p_m) / p_m and
    S_k = sum_{m=a+1}^{k} ln rho_m, the answer is sum_{k=start}^{b-1} e^{S_k} / sum_{k=a}^{b-1} e^{S_k},
    evaluated in log space.

    :param p_values: right-jump probabilities of sites a+1..b-1
    :param start: starting site, a < start < b
    """
    if b <= a + 1:
        raise PreconditionError(f'Degenerate interval [{a}, {b}]')
    if not a < start < b:
        raise PreconditionError(f'start={start} must lie strictly inside ({a}, {b})')
    p = np.asarray(p_values, dtype=float)
    if p.shape != (b - a - 1,):
        raise PreconditionError(f'Expected {b - a - 1} p values, got {len(p_values)}')
    if np.any(p <= 0) or np.any(p >= 1):
        raise PreconditionError('p values must lie in (0, 1)')
    log_rho = np.log1p(-p) - np.log(p)
    # S_a = 0, S_k for k = a+1..b-1
    s = np.concatenate(([0.0], np.cumsum(log_rho)))
    numerator = np.logaddexp.reduce(s[start - a :])  # noqa: E203
    denominator = np.logaddexp.reduce(s)
    return float(np.exp(numerator - denominator))


def gamblers_ruin(p: float, start: int, a: int, b: int) -> float:
    """Closed form of chung_hitting for a homogeneous p."""
    if b <= a + 1 or not a < start < b:
        raise PreconditionError(f'start={start} must lie strictly inside ({a}, {b})')
    rho = (1.0 - p) / p
    if rho == 1.0:
        return (b - start) / (b - a)
    return (rho ** (start - a) - rho ** (b - a)) / (1.0 - rho ** (b - a))


def projected_p_values(env: AbstractEnvironment, a: int, b: int) -> List[float]:
    """Right-jump probabilities w(+e1) / (w(+e1) + w(-e1)) of the first-axis projection at sites a+1..b-1.

    For the column environments the kernel depends on the column only, so these are the p_i of
    the embedded birth-death chain.
    """
    res = []
    for i in range(a + 1, b):
        kernel = env.kernel_at((i,) + (0,) * (env.d - 1))
        res.append(kernel[0] / (kernel[0] + kernel[1]))
    return res

from enum import Enum
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import Union

import numpy as np
from attr import dataclass

from pyrwre.errors import InsufficientDataError
from pyrwre.estimators.estimate import MCEstimate

MIN_FIT_POINTS = 3


class DecayModel(Enum):
    polynomial = 'polynomial'
    exponential = 'exponential'


@dataclass(kw_only=True, frozen=True)
class LineFit:
    slope: float
    intercept: float
    r2: float


@dataclass(kw_only=True, frozen=True)
class DecayFit:
    """Regressions of log p on log L (polynomial) and on L (exponential)."""

    scales: Tuple[float, ...]
    values: Tuple[float, ...]
    polynomial: LineFit
    exponential: LineFit
    winner: Optional[DecayModel]

    @property
    def exponent(self) -> float:
        return -self.polynomial.slope

    @property
    def rate(self) -> float:
        return -self.exponential.slope

    def to_json(self) -> dict:
        return {
            'scales': list(self.scales),
            'values': list(self.values),
            'polynomial': {'exponent': self.exponent, 'intercept': self.polynomial.intercept, 'r2': self.polynomial.r2},
            'exponential': {'rate': self.rate, 'intercept': self.exponential.intercept, 'r2': self.exponential.r2},
            'winner': self.winner.value if self.winner else None,
        }


def _line(x: np.ndarray, y: np.ndarray) -> LineFit:
    slope, intercept = np.polyfit(x, y, 1)
    pred = slope * x + intercept
    ss_res = float(np.sum((y - pred) ** 2))
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    r2 = 1.0 - (ss_res / ss_tot if ss_tot > 0 else 0.0)
    return LineFit(slope=float(slope), intercept=float(intercept), r2=r2)


def fit_decay(
    scales: Sequence[float],
    estimates: Sequence[Union[float, MCEstimate]],
    exclude_smallest: bool = True,
) -> DecayFit:
    """Fit polynomial and exponential decay to positive estimates over increasing scales.

    :param scales: box sizes L
    :param estimates: probabilities or MCEstimate per scale; nonpositive values are skipped
    :param exclude_smallest: drop the smallest scale when more than 3 usable points remain
    :raises InsufficientDataError: fewer than 3 usable points
    """
    if len(scales) != len(estimates):
        raise InsufficientDataError('Scales and estimates differ in length')
    points: List[Tuple[float, float]] = []
    for L, value in sorted(zip(scales, estimates), key=lambda pair: pair[0]):
        mean = value.mean if isinstance(value, MCEstimate) else float(value)
        if mean > 0:
            points.append((float(L), mean))
    if exclude_smallest and len(points) > MIN_FIT_POINTS:
        points = points[1:]
    if len(points) < MIN_FIT_POINTS:
        raise InsufficientDataError(f'Need {MIN_FIT_POINTS} positive estimates, got {len(points)}')

    L = np.array([p[0] for p in points])
    log_p = np.log(np.array([p[1] for p in points]))
    polynomial = _line(np.log(L), log_p)
    exponential = _line(L, log_p)
    winner = DecayModel.polynomial if polynomial.r2 >= exponential.r2 else DecayModel.exponential
    return DecayFit(
        scales=tuple(p[0] for p in points),
        values=tuple(p[1] for p in points),
        polynomial=polynomial,
        exponential=exponential,
        winner=winner,
    )

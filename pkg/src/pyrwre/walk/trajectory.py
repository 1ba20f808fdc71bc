import csv
from enum import Enum
from typing import List
from typing import Optional
from typing import Tuple

from attr import dataclass

from pyrwre.geometry.lattice import Point
from pyrwre.geometry.lattice import symbol_name


class Mode(Enum):
    quenched = 'quenched'
    augmented = 'augmented'


class StopKind(Enum):
    predicate = 'predicate'
    step_cap = 'step_cap'


@dataclass(kw_only=True, frozen=True)
class StopCause:
    kind: StopKind
    index: Optional[int] = None
    name: Optional[str] = None

    def __str__(self) -> str:
        if self.kind == StopKind.step_cap:
            return 'step_cap'
        return f'{self.index}:{self.name}'


@dataclass(kw_only=True, frozen=True)
class AugmentedTrajectory:
    """Walk path X_0..X_n with the symbol stream that drove it.

    `eps[k]` is the symbol of the step from X_k to X_{k+1}; it is empty in quenched mode.
    With `full=False` only the first and last positions are kept.
    """

    positions: List[Point]
    eps: List[int]
    steps: int
    stop_cause: StopCause
    stream_id: str
    mode: Mode
    full: bool = True

    @property
    def censored(self) -> bool:
        return self.stop_cause.kind == StopKind.step_cap

    @property
    def start(self) -> Point:
        return self.positions[0]

    @property
    def end(self) -> Point:
        return self.positions[-1]

    def __len__(self) -> int:
        return self.steps

    def window(self, start: int, stop: int) -> Tuple[Point, ...]:
        return tuple(self.positions[start:stop])


def dump_trajectory(traj: AugmentedTrajectory, path: str) -> None:
    """One CSV record per time: time, position components, symbol of the next step."""
    d = len(traj.start)
    with open(path, 'w', newline='') as file:
        writer = csv.writer(file, lineterminator='\n')
        writer.writerow(['time', *(f'x{i + 1}' for i in range(d)), 'eps'])
        times = range(len(traj.positions)) if traj.full else (0, traj.steps)
        for position, t in zip(traj.positions, times):
            symbol = symbol_name(traj.eps[t]) if traj.full and t < len(traj.eps) else ''
            writer.writerow([t, *position, symbol])

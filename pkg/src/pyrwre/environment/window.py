from typing import Dict
from typing import List
from typing import Mapping
from typing import Optional
from typing import Sequence

from pyrwre.environment.abstract import AbstractEnvironment
from pyrwre.environment.kernel import TransitionKernel
from pyrwre.environment.kernel import make_kernel
from pyrwre.errors import PreconditionError
from pyrwre.geometry.lattice import Point


class EnvironmentWindow(AbstractEnvironment):
    """Deterministic environment: explicit kernels on finitely many sites, one default kernel elsewhere."""

    def __init__(self, default: TransitionKernel, kernels: Optional[Mapping[Point, TransitionKernel]] = None) -> None:
        self.default = default
        self.kernels: Dict[Point, TransitionKernel] = {}
        for site, kernel in (kernels or {}).items():
            if len(site) != default.d or kernel.d != default.d:
                raise PreconditionError(f'Kernel at {site} does not match dimension {default.d}')
            self.kernels[tuple(site)] = kernel

    def __repr__(self) -> str:
        res = [
            super().__repr__(),
            '\nWindow',
            f'.d\t\t{self.d}',
            f'.sites\t\t{len(self.kernels)}',
            f'.default\t{self.default.probs}',
        ]
        return '\n'.join(res)

    @classmethod
    def constant(cls, probs: Sequence[float]) -> 'EnvironmentWindow':
        return cls(default=make_kernel(probs))

    @property
    def d(self) -> int:
        return self.default.d

    @property
    def seed(self) -> int:
        return 0

    def kernel_at(self, x: Sequence[int]) -> TransitionKernel:
        return self.kernels.get(tuple(x), self.default)

    def support_kernels(self) -> List[TransitionKernel]:
        return [self.default, *self.kernels.values()]

    def with_seed(self, seed: int) -> 'EnvironmentWindow':
        return self

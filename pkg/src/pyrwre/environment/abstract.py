from typing import List
from typing import Optional
from typing import Sequence

from pyrwre.environment.kernel import TransitionKernel


class AbstractEnvironment:
    """Anything the walk engine can read jump probabilities from."""

    @property
    def d(self) -> int:
        raise NotImplementedError

    @property
    def seed(self) -> int:
        raise NotImplementedError

    def kernel_at(self, x: Sequence[int]) -> TransitionKernel:
        raise NotImplementedError

    def support_kernels(self) -> Optional[List[TransitionKernel]]:
        """Every kernel the environment can produce, or None if the support is not finite."""
        raise NotImplementedError

    def with_seed(self, seed: int) -> 'AbstractEnvironment':
        raise NotImplementedError

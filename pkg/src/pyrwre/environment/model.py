from enum import Enum
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import attr
from attr import dataclass

from pyrwre.environment.abstract import AbstractEnvironment
from pyrwre.environment.kernel import TransitionKernel
from pyrwre.environment.kernel import make_kernel
from pyrwre.environment.plaw import PLaw
from pyrwre.environment.plaw import default_plaw
from pyrwre.errors import InvalidLawError
from pyrwre.errors import PreconditionError
from pyrwre.rng import site_uniforms

MAX_UNIFORMS_PER_DIGEST = 8


class ModelKind(Enum):
    iid_ue = 'iid_ue'
    column_e1 = 'column_e1'
    product_columns = 'product_columns'
    finite_range_mixing = 'finite_range_mixing'


PLANAR_KINDS = (ModelKind.column_e1, ModelKind.product_columns)


def _uniforms(seed: int, tag: str, site: Sequence[int], count: int) -> List[float]:
    res: List[float] = []
    chunk = 0
    while len(res) < count:
        take = min(MAX_UNIFORMS_PER_DIGEST, count - len(res))
        res.extend(site_uniforms(seed, f'{tag}/{chunk}', site, take))
        chunk += 1
    return res


@dataclass(kw_only=True, frozen=True)
class EnvironmentModel(AbstractEnvironment):
    """Lazily realized environment: kernel_at is a pure function of (seed, site).

    :param kind: model family
    :param master_seed: 64-bit environment seed
    :param dim: lattice dimension (the planar examples require 2)
    :param plaw: law of p for the column models
    :param base: mean jump weights in E order for iid_ue / finite_range_mixing
    :param jitter: relative site noise in [0, 1) applied to `base`
    :param kappa_env: uniform floor mixed into every kernel, kernel = kappa_env + (1 - 2d kappa_env) w
    :param r0: block side for finite_range_mixing
    """

    kind: ModelKind
    master_seed: int = 0
    dim: int = 2
    plaw: PLaw = attr.field(factory=default_plaw)
    base: Optional[Tuple[float, ...]] = None
    jitter: float = 0.0
    kappa_env: float = 0.0
    r0: int = 1

    def __attrs_post_init__(self) -> None:
        if self.dim < 2:
            raise PreconditionError(f'Environment needs d >= 2, got {self.dim}')
        if self.kind in PLANAR_KINDS and self.dim != 2:
            raise PreconditionError(f'{self.kind.value} is a planar model, got d={self.dim}')
        if self.kind not in PLANAR_KINDS:
            if self.base is None or len(self.base) != 2 * self.dim:
                raise InvalidLawError(f'{self.kind.value} needs {2 * self.dim} base weights')
            if any(w <= 0 for w in self.base):
                raise InvalidLawError(f'Base weights must be positive, got {self.base}')
        if not 0.0 <= self.jitter < 1.0:
            raise InvalidLawError(f'Jitter must lie in [0, 1), got {self.jitter}')
        if not 0.0 <= 2 * self.dim * self.kappa_env < 1.0:
            raise InvalidLawError(f'Floor kappa_env={self.kappa_env} leaves no mass for the site law')
        if self.r0 < 1:
            raise PreconditionError(f'Block range must be positive, got {self.r0}')

    @property
    def d(self) -> int:
        return self.dim

    @property
    def seed(self) -> int:
        return self.master_seed

    @property
    def model_tag(self) -> str:
        return self.kind.value

    def with_seed(self, seed: int) -> 'EnvironmentModel':
        return attr.evolve(self, master_seed=seed)

    def column_p(self, i: int) -> float:
        """p_i of column i (column models only)."""
        return self.plaw.sample(site_uniforms(self.master_seed, 'column', (i,), 1)[0])

    def row_p(self, j: int) -> float:
        """p'_j of row j (product_columns only)."""
        return self.plaw.sample(site_uniforms(self.master_seed, 'row', (j,), 1)[0])

    def kernel_at(self, x: Sequence[int]) -> TransitionKernel:
        if self.kind == ModelKind.column_e1:
            return self._column_kernel(self.column_p(x[0]))
        if self.kind == ModelKind.product_columns:
            return self._product_kernel(self.column_p(x[0]), self.row_p(x[1]))
        if self.kind == ModelKind.iid_ue:
            return self._jittered_kernel(_uniforms(self.master_seed, 'site', x, 2 * self.dim))
        block = tuple(c // self.r0 for c in x)
        shared = _uniforms(self.master_seed, 'block', block, 2 * self.dim)
        noise = _uniforms(self.master_seed, 'site', x, 2 * self.dim)
        return self._jittered_kernel([(a + b) / 2 for a, b in zip(shared, noise)])

    def support_kernels(self) -> Optional[List[TransitionKernel]]:
        if self.kind == ModelKind.column_e1:
            return [self._column_kernel(p) for p in self.plaw.values]
        if self.kind == ModelKind.product_columns:
            return [self._product_kernel(p, q) for p in self.plaw.values for q in self.plaw.values]
        if self.jitter == 0:
            return [self._jittered_kernel([0.5] * (2 * self.dim))]
        return None

    def _floored(self, weights: Sequence[float], normalize: bool = True) -> TransitionKernel:
        total = sum(weights) if normalize else 1.0
        mass = 1.0 - 2 * self.dim * self.kappa_env
        return make_kernel([self.kappa_env + mass * w / total for w in weights])

    def _column_kernel(self, p: float) -> TransitionKernel:
        return self._floored([p / 2, 0.5 - p / 2, 0.25, 0.25], normalize=False)

    def _product_kernel(self, p: float, q: float) -> TransitionKernel:
        return self._floored([p / 2, 0.5 - p / 2, q / 2, 0.5 - q / 2], normalize=False)

    def _jittered_kernel(self, uniforms: Sequence[float]) -> TransitionKernel:
        assert self.base is not None
        return self._floored([b * (1.0 + self.jitter * (2.0 * u - 1.0)) for b, u in zip(self.base, uniforms)])

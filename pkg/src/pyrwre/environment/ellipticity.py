from typing import Iterable
from typing import List
from typing import Optional
from typing import Sequence

from attr import dataclass

from pyrwre.environment.abstract import AbstractEnvironment
from pyrwre.environment.kernel import TransitionKernel
from pyrwre.errors import PreconditionError
from pyrwre.geometry.direction import DirectionSpec
from pyrwre.geometry.direction import epsilon_set
from pyrwre.geometry.lattice import Point
from pyrwre.rng import ReplicaStream

DEFAULT_SAMPLE_SITES = 4096
DEFAULT_SAMPLE_RADIUS = 1000


@dataclass(kw_only=True, frozen=True)
class EllipticityReport:
    passed: bool
    margin: float
    min_prob: float
    worst_site: Optional[Point]
    exact: bool

    def __bool__(self) -> bool:
        return self.passed


def sample_sites(
    d: int,
    seed: int,
    count: int = DEFAULT_SAMPLE_SITES,
    radius: int = DEFAULT_SAMPLE_RADIUS,
) -> List[Point]:
    """Reproducible uniform sample of sites in the cube [-radius, radius]^d."""
    stream = ReplicaStream(seed, 'ellipticity-sites')
    side = 2 * radius + 1
    return [tuple(int(stream.uniform() * side) - radius for _ in range(d)) for _ in range(count)]


def kernel_margin(kernel: TransitionKernel, eps: Sequence[int]) -> float:
    return kernel.min_over(eps)


def check_uniform_ellipticity(
    env: AbstractEnvironment,
    direction: DirectionSpec,
    kappa: float,
    sites: Iterable[Sequence[int]] = (),
) -> EllipticityReport:
    """Check min over e in the epsilon set of kernel(e) >= 2 kappa.

    Finite-support environments are checked over their whole support and `sites` is ignored;
    otherwise the minimum is taken over the sampled sites.

    :param env: environment model or window
    :param direction: direction defining the epsilon set
    :param kappa: ellipticity constant, must be positive
    :param sites: sample of lattice sites for environments without a finite support
    """
    if kappa <= 0:
        raise PreconditionError(f'kappa must be positive, got {kappa}')
    eps = epsilon_set(direction)
    support = env.support_kernels()
    worst_site: Optional[Point] = None
    if support is not None:
        min_prob = min(kernel_margin(k, eps) for k in support)
        exact = True
    else:
        min_prob = float('inf')
        exact = False
        for site in sites:
            value = kernel_margin(env.kernel_at(site), eps)
            if value < min_prob:
                min_prob, worst_site = value, tuple(site)
        if worst_site is None:
            raise PreconditionError('No sites to sample ellipticity from')
    return EllipticityReport(
        passed=min_prob >= 2 * kappa,
        margin=min_prob - 2 * kappa,
        min_prob=min_prob,
        worst_site=worst_site,
        exact=exact,
    )

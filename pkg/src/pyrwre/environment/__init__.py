from pyrwre.environment.abstract import AbstractEnvironment
from pyrwre.environment.ellipticity import EllipticityReport
from pyrwre.environment.ellipticity import check_uniform_ellipticity
from pyrwre.environment.ellipticity import sample_sites
from pyrwre.environment.kernel import TransitionKernel
from pyrwre.environment.kernel import make_kernel
from pyrwre.environment.kernel import uniform_kernel
from pyrwre.environment.model import EnvironmentModel
from pyrwre.environment.model import ModelKind
from pyrwre.environment.plaw import PLaw
from pyrwre.environment.plaw import Transience
from pyrwre.environment.plaw import default_plaw
from pyrwre.environment.plaw import kks_kappa
from pyrwre.environment.plaw import make_plaw
from pyrwre.environment.plaw import solomon_transience
from pyrwre.environment.window import EnvironmentWindow


def kernel_at(env: AbstractEnvironment, x) -> TransitionKernel:
    return env.kernel_at(x)


__all__ = [
    'AbstractEnvironment',
    'EllipticityReport',
    'EnvironmentModel',
    'EnvironmentWindow',
    'ModelKind',
    'PLaw',
    'Transience',
    'TransitionKernel',
    'check_uniform_ellipticity',
    'default_plaw',
    'kernel_at',
    'kks_kappa',
    'make_kernel',
    'make_plaw',
    'sample_sites',
    'solomon_transience',
    'uniform_kernel',
]

"""
Monte Carlo laboratory for random walks in random environments.

Build an environment, pick a direction and run a walk:

>>> from pyrwre import EnvironmentModel, ModelKind, make_direction
>>> env = EnvironmentModel(kind=ModelKind.column_e1, master_seed=1)
>>> direction = make_direction([1, 0])

Estimators live in `pyrwre.estimators`, exact oracles in `pyrwre.oracles`, and the
configuration-driven runner behind the `pyrwre` command in `pyrwre.experiment`.
"""

from pyrwre.environment.model import EnvironmentModel
from pyrwre.environment.model import ModelKind
from pyrwre.environment.plaw import PLaw
from pyrwre.environment.plaw import make_plaw
from pyrwre.environment.window import EnvironmentWindow
from pyrwre.errors import LabError
from pyrwre.geometry.direction import DirectionSpec
from pyrwre.geometry.direction import make_direction
from pyrwre.logging import logger
from pyrwre.rng import ReplicaStream
from pyrwre.walk.engine import run_until
from pyrwre.walk.law import EpsilonLaw
from pyrwre.walk.law import make_epsilon_law

__version__ = '0.1.0'

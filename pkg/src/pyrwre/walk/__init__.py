from pyrwre.walk.engine import StopPredicate
from pyrwre.walk.engine import at_time
from pyrwre.walk.engine import enters_halfspace
from pyrwre.walk.engine import exits_box
from pyrwre.walk.engine import exits_cone
from pyrwre.walk.engine import iter_steps
from pyrwre.walk.engine import run_until
from pyrwre.walk.law import EpsilonLaw
from pyrwre.walk.law import make_epsilon_law
from pyrwre.walk.law import sample_epsilon
from pyrwre.walk.law import step_augmented
from pyrwre.walk.trajectory import AugmentedTrajectory
from pyrwre.walk.trajectory import Mode
from pyrwre.walk.trajectory import StopCause
from pyrwre.walk.trajectory import StopKind
from pyrwre.walk.trajectory import dump_trajectory

__all__ = [
    'AugmentedTrajectory',
    'EpsilonLaw',
    'Mode',
    'StopCause',
    'StopKind',
    'StopPredicate',
    'at_time',
    'dump_trajectory',
    'enters_halfspace',
    'exits_box',
    'exits_cone',
    'iter_steps',
    'make_epsilon_law',
    'run_until',
    'sample_epsilon',
    'step_augmented',
]

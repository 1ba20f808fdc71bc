from pyrwre.geometry.direction import DirectionSpec
from pyrwre.geometry.direction import epsilon_set
from pyrwre.geometry.direction import make_direction
from pyrwre.geometry.direction import neighbor_directions
from pyrwre.geometry.direction import tilted_directions
from pyrwre.geometry.lattice import ZERO_SYMBOL
from pyrwre.geometry.lattice import Point
from pyrwre.geometry.lattice import unit_vectors
from pyrwre.geometry.regions import BoxSpec
from pyrwre.geometry.regions import ConeSpec
from pyrwre.geometry.regions import ExitClass
from pyrwre.geometry.regions import HalfSpaceSpec
from pyrwre.geometry.regions import box_exit_class
from pyrwre.geometry.regions import cone_contains
from pyrwre.geometry.regions import halfspace_contains

__all__ = [
    'BoxSpec',
    'ConeSpec',
    'DirectionSpec',
    'ExitClass',
    'HalfSpaceSpec',
    'Point',
    'ZERO_SYMBOL',
    'box_exit_class',
    'cone_contains',
    'epsilon_set',
    'halfspace_contains',
    'make_direction',
    'neighbor_directions',
    'tilted_directions',
    'unit_vectors',
]

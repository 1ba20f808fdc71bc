from pyrwre.oracles.chung import chung_hitting
from pyrwre.oracles.chung import gamblers_ruin
from pyrwre.oracles.kalikow import ExitLaw
from pyrwre.oracles.kalikow import KalikowKernel
from pyrwre.oracles.kalikow import box_sites
from pyrwre.oracles.kalikow import kalikow_condition_margin
from pyrwre.oracles.kalikow import kalikow_exit_law
from pyrwre.oracles.kalikow import kalikow_kernel
from pyrwre.oracles.paths import PathLaw
from pyrwre.oracles.paths import enumerate_path_law
from pyrwre.oracles.paths import total_variation
from pyrwre.oracles.patterns import AvoidanceResult
from pyrwre.oracles.patterns import fit_pairwise_constant
from pyrwre.oracles.patterns import inclusion_exclusion_bound
from pyrwre.oracles.patterns import pairwise_occurrence_sum
from pyrwre.oracles.patterns import pattern_avoidance_curve
from pyrwre.oracles.patterns import pattern_avoidance_prob

__all__ = [
    'AvoidanceResult',
    'ExitLaw',
    'KalikowKernel',
    'PathLaw',
    'box_sites',
    'chung_hitting',
    'enumerate_path_law',
    'fit_pairwise_constant',
    'gamblers_ruin',
    'inclusion_exclusion_bound',
    'kalikow_condition_margin',
    'kalikow_exit_law',
    'kalikow_kernel',
    'pairwise_occurrence_sum',
    'pattern_avoidance_curve',
    'pattern_avoidance_prob',
    'total_variation',
]

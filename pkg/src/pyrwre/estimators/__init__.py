from pyrwre.estimators.box import BoxFailure
from pyrwre.estimators.box import box_failure_prob
from pyrwre.estimators.box import hitting_order_prob
from pyrwre.estimators.decay import DecayFit
from pyrwre.estimators.decay import DecayModel
from pyrwre.estimators.decay import fit_decay
from pyrwre.estimators.direction import DirectionEstimate
from pyrwre.estimators.direction import direction_estimate
from pyrwre.estimators.direction import direction_profile
from pyrwre.estimators.estimate import MCEstimate
from pyrwre.estimators.kalikow import OccupationEstimate
from pyrwre.estimators.kalikow import kalikow_occupation_estimate
from pyrwre.estimators.mixing import EventFamily
from pyrwre.estimators.mixing import MixingProfile
from pyrwre.estimators.mixing import event_family
from pyrwre.estimators.mixing import mixing_profile
from pyrwre.estimators.regeneration import SecondMoment
from pyrwre.estimators.regeneration import SecondMomentProfile
from pyrwre.estimators.regeneration import regeneration_second_moment
from pyrwre.estimators.survival import SurvivalCurve
from pyrwre.estimators.survival import stacked_box_lower_bound
from pyrwre.estimators.survival import stacked_box_scales
from pyrwre.estimators.survival import survival_prob_D

__all__ = [
    'BoxFailure',
    'DecayFit',
    'DecayModel',
    'DirectionEstimate',
    'EventFamily',
    'MCEstimate',
    'MixingProfile',
    'OccupationEstimate',
    'SecondMoment',
    'SecondMomentProfile',
    'SurvivalCurve',
    'box_failure_prob',
    'direction_estimate',
    'direction_profile',
    'event_family',
    'fit_decay',
    'hitting_order_prob',
    'kalikow_occupation_estimate',
    'mixing_profile',
    'regeneration_second_moment',
    'stacked_box_lower_bound',
    'stacked_box_scales',
    'survival_prob_D',
]

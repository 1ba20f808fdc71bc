from pyrwre.regeneration.detect import Attempt
from pyrwre.regeneration.detect import RegenerationDetector
from pyrwre.regeneration.detect import RegenerationRecord
from pyrwre.regeneration.detect import cone_exit_time
from pyrwre.regeneration.detect import detect_in_trajectory
from pyrwre.regeneration.detect import detect_tau
from pyrwre.regeneration.detect import tau_sequence
from pyrwre.regeneration.pattern import PatternMatcher
from pyrwre.regeneration.pattern import PatternSpec
from pyrwre.regeneration.pattern import build_pattern
from pyrwre.regeneration.pattern import pattern_matcher

__all__ = [
    'Attempt',
    'PatternMatcher',
    'PatternSpec',
    'RegenerationDetector',
    'RegenerationRecord',
    'build_pattern',
    'cone_exit_time',
    'detect_in_trajectory',
    'detect_tau',
    'pattern_matcher',
    'tau_sequence',
]

import os
from typing import TypeVar

T = TypeVar('T')

FULL_SCALE = os.environ.get('PYRWRE_FULL_SCALE') == '1'


def scaled(reduced: T, full: T) -> T:
    """Desk-scale value by default, the full acceptance value under PYRWRE_FULL_SCALE=1."""
    return full if FULL_SCALE else reduced

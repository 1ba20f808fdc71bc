from pprint import pformat
from typing import Dict
from typing import Type

VALIDATION_EXIT_CODE = 2
RUNTIME_EXIT_CODE = 1


class LabError(Exception):
    """Base class for every error raised by the laboratory.

    Subclasses register themselves under an `error_id`, which is what the CLI prints
    and what reports store when a run fails.
    """

    __handlers__: Dict[str, Type['LabError']] = {}
    error_id = 'lab'
    exit_code = RUNTIME_EXIT_CODE

    @classmethod
    def __init_subclass__(cls, error_id: str, validation: bool = False) -> None:
        super().__init_subclass__()
        cls.error_id = error_id
        cls.exit_code = VALIDATION_EXIT_CODE if validation else RUNTIME_EXIT_CODE
        LabError.__handlers__[error_id] = cls

    @classmethod
    def by_id(cls, error_id: str) -> Type['LabError']:
        return cls.__handlers__.get(error_id, LabError)

    def __str__(self) -> str:
        if len(self.args) == 1 and isinstance(self.args[0], str):
            return self.args[0]
        return pformat(self.args)


class ConfigurationError(LabError, error_id='configuration', validation=True):
    """Experiment configuration is malformed or inconsistent"""

    def __init__(self, field: str, message: str) -> None:
        super().__init__(f'{field}: {message}')
        self.field = field
        self.message = message

    def __reduce__(self):
        return self.__class__, (self.field, self.message)


class PreconditionError(LabError, error_id='precondition', validation=True):
    """Operation called outside of its domain"""


class InvalidDirectionError(LabError, error_id='invalid_direction', validation=True):
    """Direction vector is zero, has the wrong dimension or an empty epsilon set"""


class InvalidLawError(LabError, error_id='invalid_law', validation=True):
    """Site law or epsilon law does not define a probability distribution"""


class PatternLengthError(LabError, error_id='pattern_length', validation=True):
    """Pattern length is not a positive multiple of |u|_1"""


class ConeViolationError(LabError, error_id='cone_violation', validation=True):
    """Pattern partial sums leave the cone"""

    def __init__(self, message: str, prefix) -> None:
        super().__init__(message)
        self.prefix = prefix

    def __reduce__(self):
        return self.__class__, (self.args[0], self.prefix)


class EllipticityError(LabError, error_id='ellipticity'):
    """Kernel probability in an epsilon direction is below the forcing weight"""


class NoRootError(LabError, error_id='no_root'):
    """E[rho^k] = 1 has no positive root"""


class SizeGuardError(LabError, error_id='size_guard'):
    """Exact enumeration requested beyond its size guard"""


class AbsorbingDefectError(LabError, error_id='absorbing_defect'):
    """Walk cannot leave the finite set under some realization"""


class InsufficientDataError(LabError, error_id='insufficient_data'):
    """Not enough usable samples to produce an estimate"""


class DegenerateSampleError(LabError, error_id='degenerate_sample'):
    """Every replica produced a degenerate sample"""

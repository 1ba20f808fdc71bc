from pyrwre.experiment.config import EnvironmentConfig
from pyrwre.experiment.config import ExperimentConfig
from pyrwre.experiment.config import ExperimentKind
from pyrwre.experiment.config import OracleConfig
from pyrwre.experiment.config import PLawConfig
from pyrwre.experiment.report import ExperimentResult
from pyrwre.experiment.report import RunReport
from pyrwre.experiment.report import Table
from pyrwre.experiment.report import emit_report
from pyrwre.experiment.runner import execute
from pyrwre.experiment.runner import run_experiment

__all__ = [
    'EnvironmentConfig',
    'ExperimentConfig',
    'ExperimentKind',
    'ExperimentResult',
    'OracleConfig',
    'PLawConfig',
    'RunReport',
    'Table',
    'emit_report',
    'execute',
    'run_experiment',
]

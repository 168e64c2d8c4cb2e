"""Validated specs and configs."""

from .experiment import PRESETS, ExperimentConfig, build_experiment_config, load_experiment_config
from .generators import GridDiskSpec, HornSpec, LayeredGraphSpec, StopCondition
from .report import BoundReport

__all__ = [
    'PRESETS',
    'BoundReport',
    'ExperimentConfig',
    'GridDiskSpec',
    'HornSpec',
    'LayeredGraphSpec',
    'StopCondition',
    'build_experiment_config',
    'load_experiment_config',
]

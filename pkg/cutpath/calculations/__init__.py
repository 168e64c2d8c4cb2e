"""
Experiments provided by cutpath, one class per experiment id.
"""

from .base import Experiment
from .conductance import DiskConductance
from .cutpoints import CutpointCensus
from .linking import LinkingCensus
from .minima import MinimaGrowth
from .profiles import ResistanceProfiles
from .registry import EXPERIMENTS, ExperimentFactory
from .srw import OracleSweep

__all__ = [
    'EXPERIMENTS',
    'CutpointCensus',
    'DiskConductance',
    'Experiment',
    'ExperimentFactory',
    'LinkingCensus',
    'MinimaGrowth',
    'OracleSweep',
    'ResistanceProfiles',
]

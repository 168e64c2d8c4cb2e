"""
Domain types of cutpath.

Every type is immutable once built; results can be shared between threads
and processes freely.
"""

from .experiment import ExperimentReport
from .line import LayeredGraph, LineNetwork
from .network import (
    Network,
    SplitEdge,
    SubdividedNetwork,
    TraceNetwork,
    VoltageSolution,
    build_network,
)
from .walk import CutRecord, LineWalkBatch, LinkStats, MinimaRecord, PassRecord, StopReason, WalkTrace

__all__ = [
    'CutRecord',
    'ExperimentReport',
    'LayeredGraph',
    'LineNetwork',
    'LinkStats',
    'LineWalkBatch',
    'MinimaRecord',
    'Network',
    'PassRecord',
    'SplitEdge',
    'StopReason',
    'SubdividedNetwork',
    'TraceNetwork',
    'VoltageSolution',
    'WalkTrace',
    'build_network',
]

"""Harmonic solves and network transforms."""

from .solvers import (
    contract,
    contract_sets,
    effective_conductance,
    effective_resistance,
    level_indices,
    solve_voltage,
)
from .transforms import (
    eligible_levels,
    layer_conductance,
    layer_conductances,
    level_sets,
    neighbor_ratio_violations,
    slice_conductance_bound,
    subdivide_between_levels,
    trace_network_exact,
)

__all__ = [
    'contract',
    'contract_sets',
    'effective_conductance',
    'effective_resistance',
    'eligible_levels',
    'layer_conductance',
    'layer_conductances',
    'level_indices',
    'level_sets',
    'neighbor_ratio_violations',
    'slice_conductance_bound',
    'solve_voltage',
    'subdivide_between_levels',
    'trace_network_exact',
]

"""Walk simulation and trajectory statistics."""

from .conditioned import conditioned_step_probabilities, sample_conditioned_excursion
from .simulation import (
    WalkStepper,
    pass_hit_statistics,
    pass_window,
    simulate_line_walk,
    simulate_line_walks,
    simulate_walk,
)
from .statistics import (
    cut_times,
    cutpoints,
    detect_passes,
    layer_transition_counts,
    linking_census,
    path_subgraph,
    visit_index,
)

__all__ = [
    'WalkStepper',
    'conditioned_step_probabilities',
    'cut_times',
    'cutpoints',
    'detect_passes',
    'layer_transition_counts',
    'linking_census',
    'pass_hit_statistics',
    'pass_window',
    'path_subgraph',
    'sample_conditioned_excursion',
    'simulate_line_walk',
    'simulate_line_walks',
    'simulate_walk',
    'visit_index',
]

"""Graph families: expanders, layered graphs, horns and the grid disk."""

from .expanders import gap_threshold, gen_regular_expander, second_eigenvalue
from .lattice import build_grid_disk, build_horn, horn_profile, is_horn_member, layer_boundaries
from .layered import (
    build_layered_graph,
    contract_top_layer,
    layer_schedule,
    layer_sizes,
    layered_line_network,
    line_network_of,
)

__all__ = [
    'build_grid_disk',
    'build_horn',
    'build_layered_graph',
    'contract_top_layer',
    'gap_threshold',
    'gen_regular_expander',
    'horn_profile',
    'is_horn_member',
    'layer_boundaries',
    'layer_schedule',
    'layer_sizes',
    'layered_line_network',
    'line_network_of',
    'second_eigenvalue',
]

"""Tests for cut-times, cutpoints, passes and the traversed subgraph."""
import numpy as np
import pytest

from cutpath.analysis import reducible_chain_cut_times
from cutpath.common.exceptions import ValidationError
from cutpath.data import WalkTrace
from cutpath.electrical.solvers import solve_voltage
from cutpath.walks.statistics import (
    cut_times,
    cutpoints,
    detect_passes,
    layer_transition_counts,
    linking_census,
    path_subgraph,
    visit_index,
)

LADDER = [0, 1, 0, 1, 2, 3, 2, 3, 4]


def test_cut_times():
    record = cut_times(LADDER, lookahead=0)
    assert record.horizon == 8
    assert record.times.tolist() == [3, 7]
    assert record.censored == 0


def test_cut_times_censor_the_lookahead_window():
    record = cut_times(LADDER, lookahead=2)
    assert record.times.tolist() == [3]
    assert record.censored == 1

    # the default window is T // 10
    assert cut_times(LADDER).lookahead == 0

    with pytest.raises(ValidationError):
        cut_times(LADDER, lookahead=8)


def test_cut_times_past_and_future_are_disjoint():
    rng = np.random.default_rng(0)
    walk = np.concatenate([[0], np.cumsum(rng.choice([-1, 1, 1], size=300))])
    for t in cut_times(walk, lookahead=0).times:
        assert not set(walk[:t + 1].tolist()) & set(walk[t + 1:].tolist())


def test_cut_times_after_a_backtrack():
    assert cut_times([0, 1, 2, 1, 2, 3, 4], lookahead=0).times.tolist() == [0, 4, 5]


def test_cut_times_lie_on_cutpoints():
    rng = np.random.default_rng(3)
    moves = np.array([[1, 0], [-1, 0], [0, 1], [0, -1]])
    for _ in range(20):
        # a planar walk drifting to the right
        steps = moves[rng.choice(4, size=400, p=[0.4, 0.2, 0.2, 0.2])]
        points = np.vstack([[0, 0], np.cumsum(steps, axis=0)])
        walk = (points[:, 0] + 500) * 1000 + points[:, 1] + 500
        if walk[0] == walk[-1]:
            continue

        separating = set(cutpoints(walk).tolist())
        for t in cut_times(walk, lookahead=0).times:
            if walk[t] != walk[0]:
                assert walk[t] in separating


def test_cutpoints_of_a_path():
    assert cutpoints(LADDER).tolist() == [1, 2, 3]


def test_cutpoints_skip_cycles():
    # triangle 0-1-2 then a tail 0-3-4
    assert cutpoints([0, 1, 2, 0, 3, 4]).tolist() == [3]
    # cycle 1-2-3 hung between 0 and 4
    assert cutpoints([0, 1, 2, 3, 1, 4]).tolist() == [1]


def test_cutpoints_need_distinct_ends():
    with pytest.raises(ValidationError):
        cutpoints([0, 1, 0])


def test_path_subgraph(path_graph):
    trace = WalkTrace.from_sequence([0, 1, 0, 1, 2], network=path_graph)
    path, counted = path_subgraph(trace)

    assert trace.crossings.tolist() == [3, 1]
    assert path.conductances.tolist() == [1.0, 1.0]
    assert counted.conductances.tolist() == [3.0, 1.0]
    assert solve_voltage(counted, 0, 2).conductance == pytest.approx(0.75)
    assert solve_voltage(path, 0, 2).conductance == pytest.approx(0.5)


def test_path_subgraph_drops_unused_edges(triangle):
    trace = WalkTrace.from_sequence([0, 1, 2], network=triangle)
    path, _ = path_subgraph(trace)
    assert path.n_edges == 2


def test_from_sequence_checks_adjacency(path_graph):
    with pytest.raises(ValidationError):
        WalkTrace.from_sequence([0, 2], network=path_graph)
    with pytest.raises(ValidationError):
        WalkTrace.from_sequence([])


def test_visit_index():
    index = visit_index(np.array([0, 1, 0, 2, 1]))
    assert index[0].tolist() == [0, 2]
    assert index[1].tolist() == [1, 4]
    assert index[2].tolist() == [3]


def test_detect_passes():
    layers = [0, 1, 2, 1, 0, 1, 2, 3, 2]
    record = detect_passes(layers, 1, 0.5, 2, j_minus=0, j_plus=2)

    assert record.s == (0, 4)
    assert record.t == (2, 6)
    assert record.passes == ((0, 2), (4, 6))
    assert record.linking == 2
    assert record.linked

    assert not detect_passes(layers, 1, 0.5, 3, j_minus=0, j_plus=2).linked
    assert detect_passes(layers, 1, 0.5, 2, j_minus=0, j_plus=2, limit=1).t == (2,)


def test_linking_census():
    traces = [
        [0, 1, 2, 3, 4, 5, 6],
        [0, 1, 2, 3, 4, 3, 2, 3, 4, 5, 6],
    ]
    stats = linking_census(traces, beta=0.0, M=2, js=[3, 4])

    assert stats.indicators.tolist() == [[1, 1], [0, 1]]
    assert stats.p.tolist() == [0.5, 1.0]
    assert stats.blocks.tolist() == [1]
    assert stats.block_counts.tolist() == [[2], [1]]
    assert stats.block_positive.tolist() == [1.0]

    with pytest.raises(ValidationError):
        linking_census(traces, beta=1.5, M=2, js=[3])


def test_layer_transition_counts():
    counts = layer_transition_counts([0, 1, 1, 2, 1])
    assert counts.tolist() == [[0, 0, 1], [0, 1, 1], [1, 0, 0]]

    with pytest.raises(ValidationError):
        layer_transition_counts([0, 2])


def test_reducible_chain_cut_times():
    blocks = [0, 0, 1, 1, 2]
    assert reducible_chain_cut_times([0, 1, 0, 2, 3, 2, 4], blocks).tolist() == [2, 5]

    with pytest.raises(ValidationError):
        reducible_chain_cut_times([2, 1], blocks)

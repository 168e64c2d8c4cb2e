"""Tests for the walk engine and the conditioned excursion sampler."""
import numpy as np
import pytest
from scipy.stats import chi2

from cutpath.analysis import conditioned_visit_expectation, return_prob
from cutpath.common.exceptions import ValidationError
from cutpath.data import LineNetwork, Network, StopReason
from cutpath.generators.layered import build_layered_graph, layer_schedule, layered_line_network, line_network_of
from cutpath.helpers import half_width, proportion_half_width, replica_rng
from cutpath.schemas.generators import LayeredGraphSpec, StopCondition
from cutpath.walks import simulation
from cutpath.walks.conditioned import conditioned_step_probabilities, sample_conditioned_excursion
from cutpath.walks.simulation import (
    WalkStepper,
    pass_hit_statistics,
    pass_window,
    simulate_line_walk,
    simulate_line_walks,
    simulate_walk,
)
from cutpath.walks.statistics import layer_transition_counts


def test_walk_stops_at_target(path_graph):
    trace = simulate_walk(path_graph, 0, StopCondition(budget=1000, targets=[2]), seed=3)

    assert trace.stop_reason == StopReason.HIT_TARGET
    assert trace.start == 0
    assert trace.end == 2
    assert trace.crossings.sum() == trace.steps == len(trace.vertices) - 1
    assert 2 not in trace.vertices[:-1].tolist()


def test_short_walk_with_a_large_budget_keeps_its_sequence(path_graph):
    trace = simulate_walk(path_graph, 0, StopCondition(budget=20_000_000, targets=[1]), seed=0)

    assert trace.stop_reason == StopReason.HIT_TARGET
    assert trace.vertices.tolist() == [0, 1]
    assert (trace.start, trace.end) == (0, 1)


def test_long_walk_keeps_counts_only(triangle, monkeypatch):
    reference = simulate_walk(triangle, 0, StopCondition(budget=200), seed=4)
    monkeypatch.setattr(simulation, "MAX_RECORDED_STEPS", 50)
    trace = simulate_walk(triangle, 0, StopCondition(budget=200), seed=4)

    assert trace.vertices is None
    assert trace.steps == trace.crossings.sum() == 200
    assert np.array_equal(trace.crossings, reference.crossings)
    assert (trace.start, trace.end) == (reference.start, reference.end)


def test_walk_is_reproducible(triangle):
    stop = StopCondition(budget=500)
    first = simulate_walk(triangle, 0, stop, seed=11)
    second = simulate_walk(triangle, 0, stop, seed=replica_rng(11))

    assert first.stop_reason == StopReason.BUDGET
    assert first.steps == 500
    assert np.array_equal(first.vertices, second.vertices)


def test_walk_stops_at_layer(unit_chain):
    trace = simulate_walk(unit_chain.as_network(), 0, StopCondition(budget=10**6, layer=5), seed=0)

    assert trace.stop_reason == StopReason.HIT_LAYER
    assert trace.layers[-1] == 5
    assert trace.first_visits[5] == trace.steps
    assert np.all(np.abs(np.diff(trace.layers)) <= 1)


def test_walk_rejects_bad_input(path_graph):
    with pytest.raises(ValidationError):
        simulate_walk(path_graph, 3, StopCondition(budget=10), seed=0)
    with pytest.raises(ValidationError):
        simulate_walk(path_graph, 0, StopCondition(budget=10, targets=[7]), seed=0)
    with pytest.raises(ValidationError):
        simulate_walk(path_graph, 0, StopCondition(budget=10, layer=1), seed=0)


def test_weighted_steps_follow_conductances():
    star = Network(3, [0, 0], [1, 2], [1.0, 3.0])
    stepper = WalkStepper(star, replica_rng(2))
    n = 20_000
    heavy = sum(stepper.step(0)[0] == 2 for _ in range(n))

    assert heavy / n == pytest.approx(0.75, abs=5 * np.sqrt(0.75 * 0.25 / n))


def test_gamblers_ruin(unit_chain):
    batch = simulate_line_walks(unit_chain, 5, replicas=4000, seed=1, budget=10**5, absorbing=[0])

    assert batch.absorbing == (0, 10)
    assert np.all(np.isin(batch.final, [0, 10]))
    assert batch.absorbed_at(0).mean() == pytest.approx(0.5, abs=4 * np.sqrt(0.25 / 4000))


def test_return_probability_by_simulation(geometric_chain):
    batch = simulate_line_walks(geometric_chain, 1, replicas=4000, seed=2, budget=10**5, absorbing=[0])
    p = return_prob(geometric_chain, 1)

    assert p == pytest.approx(0.25)
    assert batch.absorbed_at(0).mean() == pytest.approx(p, abs=4 * np.sqrt(p * (1 - p) / 4000))


def _check_return_frequencies(replicas, states, sigmas):
    line = layered_line_network(2.0, 3, 80)
    for n, j in enumerate(states):
        batch = simulate_line_walks(line, j, replicas=replicas, seed=replica_rng(9, 0, n), budget=10**6, absorbing=[0])
        p = return_prob(line, j)

        assert np.all(np.isin(batch.final, [0, 80]))
        assert abs(batch.absorbed_at(0).mean() - p) <= proportion_half_width(p, replicas, sigmas)


def test_return_frequencies_on_the_layered_line_network():
    _check_return_frequencies(3000, [1, 4, 16], sigmas=4.0)


@pytest.mark.slow
def test_return_frequencies_on_the_layered_line_network_at_scale():
    _check_return_frequencies(100_000, [1, 2, 5, 10, 40], sigmas=3.0)


def test_eta_is_a_martingale():
    line = layered_line_network(2.0, 3, 80)
    j0 = layer_schedule(2.0, 0)[1]
    increments = []
    for replica in range(40):
        path = simulate_line_walk(line, 0, replica_rng(12, 0, replica), budget=10**6)
        assert path[-1] == 80
        inside = (path[:-1] >= j0) & (path[:-1] < 80)
        increments.append(np.diff(line.eta[path])[inside])
    increments = np.concatenate(increments)

    assert len(increments) > 10_000
    assert abs(increments.mean()) <= half_width(increments)


def test_layer_process_is_the_line_network_walk():
    graph = build_layered_graph(LayeredGraphSpec(alpha=2.0, d=3, j_max=10, seed=2))
    trace = simulate_walk(graph.network, 0, StopCondition(budget=100_000), seed=6)
    counts = layer_transition_counts(trace.layers)
    probabilities = line_network_of(graph, 10).transition_probabilities()

    statistic, dof = 0.0, 0
    for j, row in enumerate(counts):
        possible = probabilities[j] > 0
        assert row[~possible].sum() == 0
        if row.sum() < 100:
            continue
        expected = row.sum() * probabilities[j][possible]
        statistic += float(np.sum((row[possible] - expected)**2 / expected))
        dof += int(possible.sum()) - 1

    assert dof >= 10
    assert chi2.sf(statistic, dof) > 1e-3


def test_recorded_line_walks_end_where_they_stop(unit_chain):
    batch = simulate_line_walks(unit_chain, 3, replicas=5, seed=4, budget=200, record=True)

    for r, path in enumerate(batch.paths):
        assert path[0] == 3
        assert path[-1] == batch.final[r]
        assert len(path) == batch.steps[r] + 1


def test_single_line_walk():
    line = LineNetwork([1.0, 1.0, 1.0, 1.0], loops=[0.0, 2.0, 2.0, 2.0, 0.0])
    path = simulate_line_walk(line, 0, seed=5, budget=10**5)

    assert path[0] == 0
    assert path[-1] == 4
    assert 4 not in path[:-1].tolist()
    assert np.all(np.abs(np.diff(path)) <= 1)

    capped = simulate_line_walk(line, 0, seed=5, budget=3)
    assert len(capped) == 4
    assert np.array_equal(capped, path[:4])

    with pytest.raises(ValidationError):
        simulate_line_walk(line, 5, seed=0, budget=10)


def test_pass_window():
    assert pass_window(16, 0.5) == (12, 20)
    assert pass_window(10, 0.5) == (6, 14)


def test_pass_hit_statistics():
    graph = build_layered_graph(LayeredGraphSpec(alpha=2.0, d=3, j_max=6, seed=0))
    layer_four = graph.layer_vertices(4)

    avoid, _ = pass_hit_statistics(graph, 4, 0.5, marked=[], replicas=20, seed=0)
    assert avoid == 1.0

    avoid, hit = pass_hit_statistics(graph, 4, 0.5, marked=layer_four, replicas=20, seed=0)
    assert avoid == 0.0
    assert 0.0 <= hit <= 1.0

    with pytest.raises(ValidationError):
        pass_hit_statistics(graph, 5, 0.5, marked=[], replicas=5, seed=0)


def test_conditioned_step_probabilities():
    rows = conditioned_step_probabilities(4)

    assert np.allclose(rows.sum(axis=1), 1.0)
    assert rows[0].tolist() == [0.0, 0.0, 1.0]
    assert rows[1].tolist() == [0.0, 0.0, 1.0]
    assert rows[2] == pytest.approx([0.25, 0.0, 0.75])

    with pytest.raises(ValidationError):
        conditioned_step_probabilities(4, laziness=1.0)


def test_conditioned_excursion_never_returns():
    path = sample_conditioned_excursion(10, seed=6, laziness=0.5)

    assert path[:2].tolist() == [0, 1]
    assert path[-1] == 10
    assert 0 not in path[1:].tolist()
    assert 10 not in path[:-1].tolist()
    assert np.all(np.abs(np.diff(path)) <= 1)


@pytest.mark.slow
def test_conditioned_visits_match_the_green_function():
    a, n = 8, 4000
    visits = [np.sum(sample_conditioned_excursion(a, replica_rng(9, 6, r))[:-1] == a // 2) for r in range(n)]

    expected = conditioned_visit_expectation(a)
    assert np.mean(visits) == pytest.approx(expected, abs=4 * np.std(visits) / np.sqrt(n))

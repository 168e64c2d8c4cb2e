"""Tests for level sets, subdivision and the trace network."""
import numpy as np
import pytest

from cutpath.common.exceptions import ValidationError
from cutpath.data import Network
from cutpath.electrical.solvers import effective_conductance, solve_voltage
from cutpath.electrical.transforms import (
    SINK_CLASS,
    eligible_levels,
    layer_conductance,
    layer_conductances,
    level_sets,
    neighbor_ratio_violations,
    slice_conductance_bound,
    subdivide_between_levels,
    trace_network_exact,
)
from cutpath.generators.lattice import build_grid_disk
from cutpath.generators.layered import build_layered_graph, contract_top_layer
from cutpath.helpers import replica_rng
from cutpath.schemas.generators import LayeredGraphSpec
from cutpath.walks.simulation import WalkStepper


@pytest.fixture
def resistor_chain():
    """Path 0..4 with resistances 0.3, 0.35, 0.2, 0.15; potentials 1, .7, .35, .15, 0."""
    return Network(5, [0, 1, 2, 3], [1, 2, 3, 4], [1 / 0.3, 1 / 0.35, 1 / 0.2, 1 / 0.15])


def test_trace_network_of_the_path(path_graph):
    trace = trace_network_exact(path_graph, 0, 2)

    assert np.allclose(trace.crossings, [3.0, 1.0])
    assert np.allclose(trace.visits, [2.0, 2.0, 0.0])
    assert trace.network().conductances.tolist() == pytest.approx([3.0, 1.0])


def test_trace_network_of_a_star():
    # source 0 between the sink 1 and a dead end 2
    star = Network(3, [0, 0], [1, 2], [1.0, 1.0])
    trace = trace_network_exact(star, 0, 1)

    assert np.allclose(trace.crossings, [1.0, 2.0])
    assert np.allclose(trace.visits, [2.0, 0.0, 1.0])


@pytest.mark.slow
def test_trace_network_matches_simulated_crossings():
    disk = build_grid_disk(10)
    source, sink = disk.terminals["origin"], disk.terminals["sink"]
    expected = trace_network_exact(disk, source, sink).crossings

    walks = 200_000
    stepper = WalkStepper(disk, replica_rng(17))
    total = np.zeros(disk.n_edges)
    squares = np.zeros(disk.n_edges)
    for _ in range(walks):
        counts = np.zeros(disk.n_edges)
        vertex = source
        while vertex != sink:
            vertex, edge = stepper.step(vertex)
            counts[edge] += 1
        total += counts
        squares += counts**2

    mean = total / walks
    error = np.sqrt(np.maximum(squares / walks - mean**2, 0.0) / walks)
    crossed = error > 0
    z = np.abs(mean[crossed] - expected[crossed]) / error[crossed]

    assert np.all(expected[~crossed] == 0)
    assert np.mean(z > 3) <= 0.02
    assert z.max() < 5


def test_level_sets_put_the_sink_in_its_own_class(resistor_chain):
    sol = solve_voltage(resistor_chain, 0, 4)
    partition = level_sets(sol, 2, resistor_chain)

    assert partition[0].tolist() == [0, 1]
    assert partition[1].tolist() == [2]
    assert partition[2].tolist() == [3]
    assert partition[SINK_CLASS].tolist() == [4]


def test_harmonic_potentials_respect_the_neighbor_ratio():
    disk = build_grid_disk(6)
    sol = solve_voltage(disk, 0, disk.terminals["sink"])
    assert neighbor_ratio_violations(disk, sol) == []


def test_subdivision_preserves_conductance(resistor_chain):
    sol = solve_voltage(resistor_chain, 0, 4)
    sub = subdivide_between_levels(resistor_chain, sol, 0, 2)

    assert len(sub.splits) == 2
    assert sub.z.tolist() == [5]
    assert sub.z_prime.tolist() == [6]
    assert sub.thresholds == (0.5, 0.25)

    refined = solve_voltage(sub.network, 0, 4)
    assert refined.conductance == pytest.approx(sol.conductance, abs=1e-9)
    assert refined.potentials[5] == pytest.approx(0.5, abs=1e-9)
    assert refined.potentials[6] == pytest.approx(0.25, abs=1e-9)
    assert np.allclose(refined.potentials[:5], sol.potentials, atol=1e-9)


def test_threshold_slice_conductance(resistor_chain):
    sol = solve_voltage(resistor_chain, 0, 4)
    sub = subdivide_between_levels(resistor_chain, sol, 0, 2)

    value = effective_conductance(sub.network, sub.z, sub.z_prime)
    assert value == pytest.approx(sol.conductance / (0.5 - 0.25), abs=1e-9)


def test_subdivision_needs_three_levels(path_graph):
    sol = solve_voltage(path_graph, 0, 2)
    with pytest.raises(ValidationError):
        subdivide_between_levels(path_graph, sol, 0, 2)


def test_slice_conductance_bound(resistor_chain):
    value, bound = slice_conductance_bound(resistor_chain, 0, 4, 0)
    assert value == pytest.approx(1 / 0.55)
    assert bound == pytest.approx(4.0)
    assert value <= bound


def test_eligible_levels(resistor_chain):
    sol = solve_voltage(resistor_chain, 0, 4)
    assert eligible_levels(resistor_chain, sol) == [0]

    report = layer_conductance(resistor_chain, 0, 4, 0)
    assert report.value == pytest.approx(1 / (1 / 3 + 1 / 2.5))
    assert report.satisfied

    with pytest.raises(ValidationError):
        layer_conductance(resistor_chain, 0, 4, 1)


def test_layer_conductances_on_the_disk():
    disk = build_grid_disk(20)
    reports = layer_conductances(disk, 0, disk.terminals["sink"])

    assert reports
    for report in reports:
        assert report.bound == pytest.approx(8 / 3)
        assert report.value <= 4.0
        assert report.satisfied


def test_layer_conductances_on_the_layered_graph():
    graph = build_layered_graph(LayeredGraphSpec(j_max=12, seed=5))
    net, root, sink = contract_top_layer(graph)

    assert net.n_vertices == graph.offsets[-2] + 1
    assert sink == 0 and root == 1
    # layers 11 and 12 have equal size, joined by d rungs per vertex
    assert np.count_nonzero((net.tails == sink) | (net.heads == sink)) == graph.sizes[11] * graph.d

    reports = layer_conductances(net, root, sink, graph="layered")
    assert reports
    for report in reports:
        assert report.parameters["graph"] == "layered"
        assert report.bound == pytest.approx(2 * report.parameters["d"] / (report.parameters["d"] - 1))
        assert report.satisfied

"""
Seeded simulation of network walks.

A network walk at `x` crosses edge `e` with probability `c_e / C_x`; a
self-loop keeps the walk in place. Uniforms are drawn in large buffers and
consumed in a fixed order, so a seed fixes the trace exactly.
"""
from __future__ import annotations

import bisect
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from cutpath.common.exceptions import RetryBudgetExhausted, ValidationError
from cutpath.common.log import CUTPATH_LOGGER
from cutpath.data.line import LayeredGraph, LineNetwork
from cutpath.data.network import Network
from cutpath.data.walk import LineWalkBatch, StopReason, WalkTrace
from cutpath.helpers import replica_rng
from cutpath.schemas.generators import StopCondition

LOGGER = CUTPATH_LOGGER.getChild("simulation")

BUFFER_SIZE = 1 << 16
MAX_RECORDED_STEPS = 10**7

Seed = Union[int, np.random.Generator]


def _as_rng(seed: Seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return replica_rng(seed)


class WalkStepper:
    """Draws single steps of the network walk on `net`.

    Attributes
    ==========
    `net` : `Network`
        The host network.
    `rng` : `np.random.Generator`
        The random stream, read `BUFFER_SIZE` uniforms at a time.
    """

    def __init__(self, net: Network, rng: np.random.Generator) -> None:
        self.net = net
        self.rng = rng

        indptr, self.edge_ids, self.neighbors = net.incidence
        self.indptr = indptr.tolist()
        self.equal_weights = net.n_edges == 0 or bool(np.all(net.conductances == net.conductances[0]))

        if not self.equal_weights:
            weights = net.conductances[self.edge_ids]
            running = np.cumsum(weights)
            starts = np.repeat(running[indptr[:-1] - 1] * (indptr[:-1] > 0), np.diff(indptr))
            self.cumulative = (running - starts).tolist()

        self._buffer: list[float] = []
        self._position = 0

    def uniform(self) -> float:
        if self._position == len(self._buffer):
            self._buffer = self.rng.random(BUFFER_SIZE).tolist()
            self._position = 0
        u = self._buffer[self._position]
        self._position += 1
        return u

    def step(self, vertex: int) -> tuple[int, int]:
        """Return `(next vertex, edge id)` of one step from `vertex`."""
        lo, hi = self.indptr[vertex], self.indptr[vertex + 1]
        if lo == hi:
            raise ValidationError(f"vertex {vertex} has no edges")

        u = self.uniform()
        if self.equal_weights:
            k = lo + int(u * (hi - lo))
        else:
            k = bisect.bisect_right(self.cumulative, u * self.cumulative[hi - 1], lo, hi)
        k = min(k, hi - 1)
        return int(self.neighbors[k]), int(self.edge_ids[k])


def _stop_mask(net: Network, stop: StopCondition) -> tuple[np.ndarray, np.ndarray]:
    targets = np.zeros(net.n_vertices, dtype=bool)
    if stop.targets:
        if max(stop.targets) >= net.n_vertices:
            raise ValidationError(f"stop target out of range [0, {net.n_vertices})")
        targets[stop.targets] = True

    layer_reached = np.zeros(net.n_vertices, dtype=bool)
    if stop.layer is not None:
        if net.layers is None:
            raise ValidationError("a layer stop needs a network with a 'layer' label")
        layer_reached = net.layers >= stop.layer

    return targets, layer_reached


def simulate_walk(net: Network, start: int, stop: StopCondition, seed: Seed) -> WalkTrace:
    """Simulate the network walk from `start` until `stop` is met.

    Parameters
    ----------
    `net` : `Network`
        The host network.
    `start` : `int`
        The starting vertex.
    `stop` : `StopCondition`
        Target vertices and/or a layer to reach; the step budget always applies.
    `seed` : `int | np.random.Generator`
        A seed or an already derived stream.

    Returns
    -------
    `WalkTrace`
        Crossing counts and layer visit times, plus the vertex sequence
        unless the walk took more than `MAX_RECORDED_STEPS` steps.

    Raises
    ------
    `ValidationError`
        If `start` or a target is out of range or the walk reaches a
        vertex without edges.
    """
    if not 0 <= start < net.n_vertices:
        raise ValidationError(f"start {start} out of range [0, {net.n_vertices})")

    targets, layer_reached = _stop_mask(net, stop)
    stopping = targets | layer_reached
    record = True
    labelled = net.layers is not None

    stepper = WalkStepper(net, _as_rng(seed))
    crossings = np.zeros(net.n_edges, dtype=np.int64)

    size = min(stop.budget, BUFFER_SIZE) + 1
    vertices = np.empty(size, dtype=np.int64)
    layers = np.empty(size, dtype=np.int64) if labelled else None
    vertices[0] = start
    if labelled:
        layers[0] = net.layers[start]

    vertex, steps = start, 0
    while not stopping[vertex] and steps < stop.budget:
        vertex, edge = stepper.step(vertex)
        crossings[edge] += 1
        steps += 1

        if record and steps > MAX_RECORDED_STEPS:
            LOGGER.warning(
                f"walk from {start} passed {MAX_RECORDED_STEPS} steps, keeping crossing counts only")
            record, vertices = False, None
        if steps == size:
            size = min(2 * size, stop.budget + 1)
            vertices = np.resize(vertices, size) if record else None
            layers = np.resize(layers, size) if labelled else None
        if record:
            vertices[steps] = vertex
        if labelled:
            layers[steps] = net.layers[vertex]

    if targets[vertex]:
        reason = StopReason.HIT_TARGET
    elif layer_reached[vertex]:
        reason = StopReason.HIT_LAYER
    else:
        reason = StopReason.BUDGET

    LOGGER.debug(f"walk from {start}: {steps} steps, stopped by {reason.value}")

    return WalkTrace(
        network=net,
        crossings=crossings,
        steps=steps,
        stop_reason=reason,
        vertices=vertices[:steps + 1] if record else None,
        layers=layers[:steps + 1] if labelled else None,
        first_vertex=start,
        last_vertex=vertex,
    )


def simulate_line_walks(
    line: LineNetwork,
    start: int,
    replicas: int,
    seed: Seed,
    budget: int,
    absorbing: Iterable[int] = (),
    record: bool = False,
) -> LineWalkBatch:
    """Run `replicas` walks on a line network side by side.

    The right end `L` always absorbs; further absorbing states are listed
    in `absorbing`. A replica also stops after `budget` steps.

    Parameters
    ----------
    `line` : `LineNetwork`
        The chain.
    `start` : `int`
        Common starting state.
    `replicas` : `int`
        Number of walks.
    `seed` : `int | np.random.Generator`
        The random stream.
    `budget` : `int`
        Maximal number of steps per replica.
    `absorbing` : `Iterable[int]`
        Extra absorbing states, such as 0 for return probabilities.
    `record` : `bool`
        Keep every replica's state sequence.
    """
    L = line.length
    if not 0 <= start <= L:
        raise ValidationError(f"start {start} outside [0, {L}]")
    if replicas < 1 or budget < 1:
        raise ValidationError("replicas and budget must be positive")

    absorbing = tuple(sorted(set(int(a) for a in absorbing) | {L}))
    stops = np.zeros(L + 1, dtype=bool)
    stops[list(absorbing)] = True

    rng = _as_rng(seed)
    probabilities = line.transition_probabilities()
    down = probabilities[:, 0]
    up_threshold = probabilities[:, 0] + probabilities[:, 1]

    position = np.full(replicas, start, dtype=np.int64)
    steps = np.zeros(replicas, dtype=np.int64)
    active = np.flatnonzero(~stops[position])
    history = [position.copy()] if record else None

    t = 0
    while len(active) and t < budget:
        u = rng.random(len(active))
        here = position[active]
        move = np.where(u < down[here], -1, np.where(u >= up_threshold[here], 1, 0))
        position[active] = here + move
        steps[active] += 1
        t += 1
        if record:
            history.append(position.copy())
        active = active[~stops[position[active]]]

    paths = None
    if record:
        stacked = np.vstack(history)
        paths = tuple(stacked[:steps[r] + 1, r].copy() for r in range(replicas))

    return LineWalkBatch(start=start, absorbing=absorbing, final=position, steps=steps, paths=paths)


def simulate_line_walk(
    line: LineNetwork,
    start: int,
    seed: Seed,
    budget: int,
    absorbing: Iterable[int] = (),
) -> np.ndarray:
    """State sequence of a single walk on a line network.

    Draws the same kind of steps as `simulate_line_walks` but keeps one
    growing path instead of a per-step history of all replicas.
    """
    L = line.length
    if not 0 <= start <= L:
        raise ValidationError(f"start {start} outside [0, {L}]")
    if budget < 1:
        raise ValidationError("budget must be positive")

    stops = [False] * (L + 1)
    for state in set(int(a) for a in absorbing) | {L}:
        stops[state] = True

    probabilities = line.transition_probabilities()
    down = probabilities[:, 0].tolist()
    up_threshold = (probabilities[:, 0] + probabilities[:, 1]).tolist()

    rng = _as_rng(seed)
    path = np.empty(min(budget, BUFFER_SIZE) + 1, dtype=np.int64)
    path[0] = state = start
    steps = 0
    while not stops[state] and steps < budget:
        buffer = rng.random(min(BUFFER_SIZE, budget - steps)).tolist()
        if len(path) < steps + len(buffer) + 1:
            path = np.resize(path, max(2 * len(path), steps + len(buffer) + 1))
        for u in buffer:
            state += -1 if u < down[state] else (1 if u >= up_threshold[state] else 0)
            steps += 1
            path[steps] = state
            if stops[state]:
                break

    return path[:steps + 1].copy()


def pass_hit_statistics(
    g: LayeredGraph,
    j: int,
    beta: float,
    marked: Sequence[int],
    replicas: int,
    seed: int,
    designated: Optional[int] = None,
    budget: int = 10**7,
) -> tuple[float, float]:
    """Estimate how often a pass around `j` avoids `marked` or hits `designated`.

    A pass is the part of the walk after its last visit to layer `j_-`
    before it first reaches layer `j_+`. Each replica starts at a uniform
    vertex of layer `j_-` and walks until it completes a pass; visits to
    layer `j_-` or below restart the candidate pass.

    Parameters
    ----------
    `g` : `LayeredGraph`
        The host, with `j_+ <= j_max`.
    `j` : `int`
        The center layer.
    `beta` : `float`
        Pass width exponent, `j_- = floor(j - j**beta)`, `j_+ = ceil(j + j**beta)`.
    `marked` : `Sequence[int]`
        Vertices in layers `[j_-, j_+]`.
    `replicas` : `int`
        Number of passes.
    `seed` : `int`
        Master seed; replica `r` uses the stream `(seed, 0, r)`.
    `designated` : `Optional[int]`
        A vertex of layer `j`, the first one by default.
    `budget` : `int`
        Step cap per replica.

    Returns
    -------
    `tuple[float, float]`
        Frequency of passes avoiding `marked`, frequency of passes
        visiting `designated`.

    Raises
    ------
    `ValidationError`
        If `j_- < 0`, `j_+ > j_max`, `replicas < 1` or a marked vertex lies
        outside the pass layers.
    `RetryBudgetExhausted`
        If a replica does not complete a pass within `budget` steps.
    """
    j_minus, j_plus = pass_window(j, beta)
    if j_minus < 0 or j_plus > g.j_max:
        raise ValidationError(f"pass window [{j_minus}, {j_plus}] outside [0, {g.j_max}]")
    if replicas < 1:
        raise ValidationError("at least one replica is needed")

    net = g.network
    layers = net.layers
    marked_mask = np.zeros(net.n_vertices, dtype=bool)
    marked = np.asarray(list(marked), dtype=np.int64)
    if len(marked):
        if np.any((layers[marked] < j_minus) | (layers[marked] > j_plus)):
            raise ValidationError(f"marked vertices must lie in layers [{j_minus}, {j_plus}]")
        marked_mask[marked] = True
    designated = int(g.offsets[j]) if designated is None else int(designated)

    misses = hits = 0
    for r in range(replicas):
        rng = replica_rng(seed, 0, r)
        stepper = WalkStepper(net, rng)
        vertex = int(rng.integers(g.offsets[j_minus], g.offsets[j_minus + 1]))
        touched, seen, steps = bool(marked_mask[vertex]), vertex == designated, 0

        while layers[vertex] < j_plus:
            if steps == budget:
                raise RetryBudgetExhausted(f"replica {r} completed no pass in {budget} steps")
            vertex, _ = stepper.step(vertex)
            steps += 1
            if layers[vertex] <= j_minus:
                touched, seen = bool(marked_mask[vertex]), vertex == designated
            else:
                touched = touched or bool(marked_mask[vertex])
                seen = seen or vertex == designated

        misses += not touched
        hits += seen

    return misses / replicas, hits / replicas


def pass_window(j: int, beta: float) -> tuple[int, int]:
    """`(floor(j - j**beta), ceil(j + j**beta))`."""
    width = float(j)**beta
    return int(np.floor(j - width)), int(np.ceil(j + width))

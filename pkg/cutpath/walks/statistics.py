"""
Trajectory statistics: the traversed subgraph, passes and linking,
cut-times and cutpoints.
"""
from __future__ import annotations

from typing import Optional, Sequence, Union

import networkx as nx
import numpy as np

from cutpath.common.exceptions import ValidationError
from cutpath.common.log import CUTPATH_LOGGER
from cutpath.data.network import Network
from cutpath.data.walk import CutRecord, LinkStats, PassRecord, WalkTrace
from cutpath.helpers import dyadic_block

from .simulation import pass_window

LOGGER = CUTPATH_LOGGER.getChild("statistics")

Trajectory = Union[WalkTrace, Sequence[int], np.ndarray]


def _vertex_sequence(trace: Trajectory) -> np.ndarray:
    if isinstance(trace, WalkTrace):
        if trace.vertices is None:
            raise ValidationError("the trace kept no vertex sequence")
        return trace.vertices
    return np.asarray(trace, dtype=np.int64)


def path_subgraph(trace: WalkTrace) -> tuple[Network, Network]:
    """Return `(PATH, G^N)` on the host's vertices.

    Both keep exactly the edges crossed at least once; PATH with unit
    conductances, `G^N` with the crossing counts.
    """
    used = trace.crossings >= 1
    path = trace.network.with_conductances(np.ones(trace.network.n_edges), mask=used)
    counted = trace.network.with_conductances(trace.crossings.astype(float), mask=used)
    return path, counted


def visit_index(layers: np.ndarray) -> dict[int, np.ndarray]:
    """Sorted visit times of every layer in `layers`."""
    layers = np.asarray(layers)
    order = np.argsort(layers, kind="stable")
    values, starts = np.unique(layers[order], return_index=True)
    return dict(zip(values.tolist(), np.split(order, starts[1:])))


def detect_passes(
    layers: Sequence[int] | np.ndarray,
    j: int,
    beta: float,
    M: int,
    j_minus: Optional[int] = None,
    j_plus: Optional[int] = None,
    visits: Optional[dict[int, np.ndarray]] = None,
    limit: Optional[int] = None,
) -> PassRecord:
    """Scan a layer sequence for alternating visits to `j_-` and `j_+`.

    `s_0` is the first visit to `j_-`, `t_i` the first visit to `j_+` after
    `s_i` and `s_{i+1}` the first visit to `j_-` after `t_i`. Every `t_i`
    closes a pass, which starts at the last `j_-` visit before it.

    Parameters
    ----------
    `layers` : `Sequence[int]`
        The layer sequence `X_0, ..., X_T`.
    `j` : `int`
        The center.
    `beta`, `M` : `float`, `int`
        Window exponent and linking threshold.
    `j_minus`, `j_plus` : `Optional[int]`
        Override the window `floor(j - j**beta)`, `ceil(j + j**beta)`.
    `visits` : `Optional[dict]`
        Precomputed `visit_index(layers)`, shared across centers.
    `limit` : `Optional[int]`
        Stop after this many `t_i`.
    """
    default_minus, default_plus = pass_window(j, beta)
    j_minus = default_minus if j_minus is None else j_minus
    j_plus = default_plus if j_plus is None else j_plus

    visits = visit_index(layers) if visits is None else visits
    empty = np.zeros(0, dtype=np.int64)
    lows, highs = visits.get(j_minus, empty), visits.get(j_plus, empty)

    s, t, passes = [], [], []
    if len(lows):
        current = int(lows[0])
        while limit is None or len(t) < limit:
            s.append(current)
            k = np.searchsorted(highs, current, side="right")
            if k == len(highs):
                break
            end = int(highs[k])
            t.append(end)
            passes.append((int(lows[np.searchsorted(lows, end) - 1]), end))
            k = np.searchsorted(lows, end, side="right")
            if k == len(lows):
                break
            current = int(lows[k])

    return PassRecord(
        j=j,
        beta=beta,
        M=M,
        j_minus=j_minus,
        j_plus=j_plus,
        s=tuple(s),
        t=tuple(t),
        passes=tuple(passes),
    )


def linking_census(traces: Sequence[Sequence[int]], beta: float, M: int, js: Sequence[int]) -> LinkStats:
    """Unlinked indicators `I_j` over replicas and dyadic block counts `A_k`.

    Only blocks `(2**k, 2**(k+1)]` fully contained in `js` are counted.

    Raises
    ------
    `ValidationError`
        If `js` is empty or has a center with `j_- < 0`.
    """
    js = np.unique(np.asarray(list(js), dtype=np.int64))
    if not len(js):
        raise ValidationError("the census needs at least one layer")
    if pass_window(int(js[0]), beta)[0] < 0:
        raise ValidationError(f"layer {js[0]} has a negative lower window end")

    indicators = np.zeros((len(traces), len(js)), dtype=np.int8)
    for r, layers in enumerate(traces):
        visits = visit_index(layers)
        for n, j in enumerate(js.tolist()):
            record = detect_passes(layers, j, beta, M, visits=visits, limit=M)
            indicators[r, n] = not record.linked

    members = set(js.tolist())
    candidates = np.unique(dyadic_block(js[js >= 2])) if np.any(js >= 2) else np.zeros(0, dtype=np.int64)
    blocks = np.array([k for k in candidates.tolist() if all(j in members for j in range(2**k + 1, 2**(k + 1) + 1))],
                      dtype=np.int64)

    block_of = dyadic_block(np.maximum(js, 1))
    block_counts = np.zeros((len(traces), len(blocks)), dtype=np.int64)
    for b, k in enumerate(blocks.tolist()):
        block_counts[:, b] = indicators[:, block_of == k].sum(axis=1)

    return LinkStats(js=js, beta=beta, M=M, indicators=indicators, blocks=blocks, block_counts=block_counts)


def cut_times(trace: Trajectory, lookahead: Optional[int] = None) -> CutRecord:
    """Times `t < T - W` whose past `{X_0..X_t}` misses the future `{X_{t+1}..X_T}`.

    `t` qualifies iff every vertex seen up to `t` is last visited by `t`,
    i.e. the running maximum of last-visit times equals `t`.

    Parameters
    ----------
    `trace` : `WalkTrace | Sequence[int]`
        The walk.
    `lookahead` : `Optional[int]`
        The censoring window `W`, `T // 10` by default.

    Raises
    ------
    `ValidationError`
        If `W >= T`.
    """
    vertices = _vertex_sequence(trace)
    T = len(vertices) - 1
    W = T // 10 if lookahead is None else int(lookahead)
    if W >= T or W < 0:
        raise ValidationError(f"lookahead W={W} must lie in [0, T={T})")

    values, first_reversed = np.unique(vertices[::-1], return_index=True)
    last = np.empty(len(values), dtype=np.int64)
    last[:] = T - first_reversed
    slots = np.searchsorted(values, vertices)
    reach = np.maximum.accumulate(last[slots])

    cuts = np.flatnonzero(reach[:-1] == np.arange(T))
    kept = cuts[cuts < T - W]
    return CutRecord(horizon=T, lookahead=W, times=kept, censored=int(len(cuts) - len(kept)))


def cutpoints(trace: Trajectory) -> np.ndarray:
    """Vertices of the traversed subgraph separating `X_0` from `X_T`.

    The separating cut vertices are those on the block-cut tree path between
    `X_0` and `X_T`, endpoints excluded.

    Raises
    ------
    `ValidationError`
        If `X_0 = X_T`.
    """
    vertices = _vertex_sequence(trace)
    origin, end = int(vertices[0]), int(vertices[-1])
    if origin == end:
        raise ValidationError("cutpoints need X_0 != X_T")

    graph = nx.Graph()
    pairs = np.column_stack([vertices[:-1], vertices[1:]])
    pairs = np.unique(np.sort(pairs[pairs[:, 0] != pairs[:, 1]], axis=1), axis=0)
    graph.add_edges_from(pairs.tolist())

    articulation = set(nx.articulation_points(graph))
    tree = nx.Graph()
    home: dict[int, tuple[str, int]] = {}
    for b, block in enumerate(nx.biconnected_components(graph)):
        for vertex in block:
            if vertex in articulation:
                tree.add_edge(("B", b), ("C", vertex))
            else:
                home[vertex] = ("B", b)
    for vertex in articulation:
        home[vertex] = ("C", vertex)

    route = nx.shortest_path(tree, home[origin], home[end])
    separating = [node[1] for node in route if node[0] == "C" and node[1] not in (origin, end)]
    return np.array(sorted(separating), dtype=np.int64)


def layer_transition_counts(layers: Sequence[int] | np.ndarray) -> np.ndarray:
    """Counts of `j -> j-1`, `j -> j` and `j -> j+1` steps, one row per layer.

    Raises
    ------
    `ValidationError`
        If a step changes the layer by more than one.
    """
    layers = np.asarray(layers, dtype=np.int64)
    moves = np.diff(layers)
    if np.any(np.abs(moves) > 1):
        raise ValidationError("layer sequence jumps by more than one")

    counts = np.zeros((int(layers.max()) + 1 if len(layers) else 0, 3), dtype=np.int64)
    np.add.at(counts, (layers[:-1], moves + 1), 1)
    return counts

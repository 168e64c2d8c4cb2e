"""
The layered expander graph and its line network.

Layer `j` is a copy of the expander `E_{2^k}` for
`2**k / k**alpha <= j < 2**(k+1) / (k+1)**alpha`. Layers below `j0` copy
layer `j0`, where `j0` is the first layer from which every interval
contains an integer, so adjacent layers never differ by more than a
factor two in size.
"""
from __future__ import annotations

from functools import lru_cache
import math

import numpy as np

from cutpath.common.exceptions import ValidationError
from cutpath.common.log import CUTPATH_LOGGER
from cutpath.data.line import LayeredGraph, LineNetwork
from cutpath.data.network import Network
from cutpath.electrical.solvers import contract_sets
from cutpath.schemas.generators import LayeredGraphSpec

from .expanders import gen_regular_expander

LOGGER = CUTPATH_LOGGER.getChild("layered")

K_SEARCH_LIMIT = 400


def _interval(alpha: float, k: int) -> tuple[float, float]:
    return 2.0**k / k**alpha, 2.0**(k + 1) / (k + 1)**alpha


@lru_cache(maxsize=None)
def _first_regular(alpha: float) -> tuple[int, int]:
    empty = [k for k in range(1, K_SEARCH_LIMIT) if math.ceil(_interval(alpha, k)[0]) >= _interval(alpha, k)[1]]
    k_star = (max(empty) + 1) if empty else 1
    return k_star, math.ceil(_interval(alpha, k_star)[0])


def layer_schedule(alpha: float, j: int) -> tuple[int, int]:
    """Return `(k, j0)`: layer `j` is a copy of `E_{2^k}`.

    Parameters
    ----------
    `alpha` : `float`
        The growth exponent, `alpha > 1`.
    `j` : `int`
        The layer, `j >= 0`.

    Raises
    ------
    `ValidationError`
        If `alpha <= 1` or `j < 0`.
    """
    if alpha <= 1:
        raise ValidationError(f"alpha must exceed 1 (got {alpha})")
    if j < 0:
        raise ValidationError(f"layer index must be nonnegative (got {j})")

    k, j0 = _first_regular(float(alpha))
    target = max(j, j0)
    while not _interval(alpha, k)[0] <= target < _interval(alpha, k)[1]:
        k += 1
    return k, j0


def layer_sizes(alpha: float, j_max: int) -> np.ndarray:
    """`2**k(j)` for `j = 0..j_max`."""
    return np.array([2**layer_schedule(alpha, j)[0] for j in range(j_max + 1)], dtype=np.int64)


def build_layered_graph(spec: LayeredGraphSpec) -> LayeredGraph:
    """Build the layered graph of `spec`.

    One expander is sampled per distinct size and reused for every layer of
    that size. Same-size neighbours `j`, `j+1` are joined by `(x_j, y_{j+1})`
    and `(y_j, x_{j+1})` for every expander edge `(x, y)`. At a doubling
    boundary each lower vertex gets `2d` stubs and each upper vertex `d`,
    matched by a seeded shuffle (parallel rungs allowed).

    Parameters
    ----------
    `spec` : `LayeredGraphSpec`
        The validated parameters.

    Returns
    -------
    `LayeredGraph`
        The graph with a `"layer"` label on every vertex.
    """
    alpha, d, j_max = spec.alpha, spec.d, spec.j_max
    _, j0 = layer_schedule(alpha, 0)
    ks = [layer_schedule(alpha, j)[0] for j in range(j_max + 1)]
    sizes = np.array([2**k for k in ks], dtype=np.int64)
    offsets = np.concatenate([[0], np.cumsum(sizes)])

    master = np.random.SeedSequence(spec.seed)

    expanders: dict[int, Network] = {}
    gaps: dict[int, float] = {}
    for k in sorted(set(ks)):
        stream = np.random.SeedSequence(master.entropy, spawn_key=(0, k))
        expanders[k], gaps[k] = gen_regular_expander(2**k, d, int(stream.generate_state(1, np.uint64)[0]))

    tails, heads = [], []
    boundaries = []

    for j, k in enumerate(ks):
        inner = expanders[k]
        tails.append(offsets[j] + inner.tails)
        heads.append(offsets[j] + inner.heads)

        if j == j_max:
            continue

        upper = ks[j + 1]
        if upper == k:
            tails.append(offsets[j] + np.concatenate([inner.tails, inner.heads]))
            heads.append(offsets[j + 1] + np.concatenate([inner.heads, inner.tails]))
        elif upper == k + 1:
            boundaries.append(j)
            rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(master.entropy, spawn_key=(1, j))))
            lower_stubs = np.repeat(np.arange(sizes[j]), 2 * d)
            upper_stubs = np.repeat(np.arange(sizes[j + 1]), d)
            assert len(lower_stubs) == len(upper_stubs)
            tails.append(offsets[j] + lower_stubs)
            heads.append(offsets[j + 1] + rng.permutation(upper_stubs))
        else:
            raise ValidationError(f"layer {j + 1} is not the same size or twice the size of layer {j}")

    tails, heads = np.concatenate(tails), np.concatenate(heads)
    layers = np.repeat(np.arange(j_max + 1), sizes)
    network = Network(int(offsets[-1]), tails, heads, np.ones(len(tails)), labels={"layer": layers})

    LOGGER.debug(f"layered graph alpha={alpha}, d={d}, j_max={j_max}: {network}, doubling at {boundaries}")

    return LayeredGraph(
        network=network,
        sizes=sizes,
        offsets=offsets,
        boundaries=tuple(boundaries),
        alpha=alpha,
        d=d,
        j0=j0,
        seed=spec.seed,
        gaps=gaps,
    )


def line_network_of(g: LayeredGraph, L: int) -> LineNetwork:
    """Count edges between and within layers `0..L`.

    `w(j, j+1)` is the number of edges between layers `j` and `j+1` and
    `w(j, j)` twice the number of edges inside layer `j`.

    Raises
    ------
    `ValidationError`
        If `L` is outside `[1, j_max]` or a layer pair has no edges.
    """
    if not 1 <= L <= g.j_max:
        raise ValidationError(f"truncation L={L} outside [1, {g.j_max}]")

    net = g.network
    low = np.minimum(net.layers[net.tails], net.layers[net.heads])
    high = np.maximum(net.layers[net.tails], net.layers[net.heads])

    across = high == low + 1
    rungs = np.bincount(low[across], minlength=g.j_max + 1)[:L]
    loops = 2 * np.bincount(low[high == low], minlength=g.j_max + 1)[:L + 1]

    if np.any(rungs == 0):
        raise ValidationError(f"no edges between layers {int(np.flatnonzero(rungs == 0)[0])} and the next")

    return LineNetwork(rungs.astype(float), loops.astype(float))


def layered_line_network(alpha: float, d: int, L: int) -> LineNetwork:
    """The line network of the layered graph, from the size schedule alone.

    Equal to `line_network_of` on any generated instance, without building
    the graph: a layer of size `m` has `w(j, j) = m d` and
    `w(j, j+1) = m d`, or `2 m d` below a doubling.
    """
    sizes = layer_sizes(alpha, L).astype(float)
    rungs = np.where(sizes[1:] == sizes[:-1], sizes[:-1] * d, 2 * sizes[:-1] * d)
    return LineNetwork(rungs, sizes * d)


def contract_top_layer(g: LayeredGraph) -> tuple[Network, int, int]:
    """Identify the vertices of layer `j_max` into one sink.

    Returns
    -------
    `tuple[Network, int, int]`
        The contracted network, the new id of vertex 0 (the walk's start)
        and the sink.

    Raises
    ------
    `ValidationError`
        If the graph has a single layer.
    """
    if g.j_max < 1:
        raise ValidationError("contracting the top layer needs at least two layers")

    net, mapping = contract_sets(g.network, [g.layer_vertices(g.j_max)])
    return net, int(mapping[0]), 0

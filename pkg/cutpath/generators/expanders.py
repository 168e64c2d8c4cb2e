"""
Random regular expanders.
"""
from __future__ import annotations

import math

import networkx as nx
import numpy as np
from scipy.sparse.linalg import eigsh

from cutpath.common.exceptions import RetryBudgetExhausted, ValidationError
from cutpath.common.log import CUTPATH_LOGGER
from cutpath.data.network import Network

LOGGER = CUTPATH_LOGGER.getChild("expanders")

MAX_RETRIES = 200
GAP_MARGIN = 0.2
DENSE_LIMIT = 2048


def gap_threshold(d: int) -> float:
    """Largest accepted second adjacency eigenvalue.

    `d - 0.2`, raised to the midpoint between `d` and the Ramanujan value
    `2 sqrt(d - 1)` when that is larger (cubic graphs concentrate near
    `2 sqrt(2) > 2.8`).
    """
    return max(d - GAP_MARGIN, (d + 2.0 * math.sqrt(d - 1)) / 2.0)


def second_eigenvalue(net: Network, rng: np.random.Generator | None = None) -> float:
    """Largest nontrivial adjacency eigenvalue in absolute value, `max(|lambda_2|, |lambda_min|)`.

    Parallel edges are summed. Dense for small graphs, Lanczos on both
    ends of the spectrum above `DENSE_LIMIT` vertices, started from a
    vector drawn from `rng`.
    """
    adjacency = net.conductance_matrix
    n = net.n_vertices

    if n <= DENSE_LIMIT:
        eigenvalues = np.linalg.eigvalsh(adjacency.toarray())
        return float(max(abs(eigenvalues[-2]), abs(eigenvalues[0])))

    rng = np.random.default_rng(0) if rng is None else rng
    # two from the top of the spectrum, one from the bottom
    eigenvalues = eigsh(adjacency.astype(float), k=3, which="BE", v0=rng.standard_normal(n), return_eigenvectors=False)
    lowest, lambda_2, _ = np.sort(eigenvalues)
    return float(max(abs(lambda_2), abs(lowest)))


def gen_regular_expander(n: int, d: int, seed: int) -> tuple[Network, float]:
    """Sample a simple `d`-regular graph with a spectral gap.

    Each attempt draws a uniform simple `d`-regular graph by the pairing
    model with rejection of loops and repeated pairs, then accepts it if
    its largest nontrivial eigenvalue in absolute value is at most
    `gap_threshold(d)`, which also rejects bipartite graphs.

    Parameters
    ----------
    `n` : `int`
        Number of vertices, `n > d`.
    `d` : `int`
        The degree, at least 3.
    `seed` : `int`
        Seed of the attempt sequence.

    Returns
    -------
    `tuple[Network, float]`
        The graph (unit conductances, edges sorted) and `second_eigenvalue` of it.

    Raises
    ------
    `ValidationError`
        If `n * d` is odd, `d < 3` or `n <= d`.
    `RetryBudgetExhausted`
        If `MAX_RETRIES` attempts all fail the gap test.
    """
    if d < 3:
        raise ValidationError(f"expander degree must be at least 3 (got {d})")
    if n <= d:
        raise ValidationError(f"need more vertices than the degree (n={n}, d={d})")
    if (n * d) % 2:
        raise ValidationError(f"n * d must be even (n={n}, d={d})")

    rng = np.random.default_rng(seed)
    threshold = gap_threshold(d)

    for attempt in range(1, MAX_RETRIES + 1):
        graph = nx.random_regular_graph(d, n, seed=int(rng.integers(2**32)))
        edges = np.array(sorted((min(u, v), max(u, v)) for u, v in graph.edges()), dtype=np.int64)
        net = Network(n, edges[:, 0], edges[:, 1], np.ones(len(edges)))

        lambda_2 = second_eigenvalue(net, rng)
        if lambda_2 <= threshold:
            LOGGER.debug(f"E_{n} (d={d}) accepted after {attempt} attempt(s), lambda_2={lambda_2:.4f}")
            return net, lambda_2

        LOGGER.debug(f"E_{n} attempt {attempt} rejected, lambda_2={lambda_2:.4f} > {threshold}")

    raise RetryBudgetExhausted(f"no {d}-regular graph on {n} vertices passed the gap test in {MAX_RETRIES} attempts")

"""
Harmonic solves, effective conductance and contraction.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components
from scipy.sparse.linalg import LinearOperator, cg, spsolve

from cutpath.common.exceptions import DisconnectedError, SolverError, ValidationError
from cutpath.common.log import CUTPATH_LOGGER
from cutpath.data.network import Network, VoltageSolution

LOGGER = CUTPATH_LOGGER.getChild("solvers")

TOLERANCE = 1e-10
DIRECT_SOLVE_LIMIT = 100_000


def level_indices(potentials: np.ndarray, d: float) -> np.ndarray:
    """Return `i(x)` with `d**(-i-1) < v(x) <= d**(-i)`, `-1` where `v(x) = 0`.

    Parameters
    ----------
    `potentials` : `np.ndarray`
        Values in `[0, 1]`.
    `d` : `float`
        The level base, at least 2.
    """
    if d < 2:
        raise ValidationError(f"level base must satisfy d >= 2 (got {d})")

    levels = np.full(len(potentials), -1, dtype=np.int64)
    positive = potentials > 0
    v = potentials[positive]
    guess = np.floor(-np.log(v) / np.log(d)).astype(np.int64)

    # repair floating point misses at exact powers of d
    guess = np.where(v > np.power(float(d), -guess.astype(float)), guess - 1, guess)
    guess = np.where(v <= np.power(float(d), -(guess + 1).astype(float)), guess + 1, guess)

    levels[positive] = guess
    return levels


def max_degree(net: Network, exclude: int) -> int:
    """Largest multigraph degree (loops ignored) over vertices other than `exclude`."""
    proper = ~net.loops
    n = net.n_vertices
    degrees = np.bincount(net.tails[proper], minlength=n) + np.bincount(net.heads[proper], minlength=n)
    degrees[exclude] = 0
    return int(degrees.max()) if n > 1 else 0


def _solve_spd(matrix: sparse.csr_matrix, rhs: np.ndarray) -> np.ndarray:
    """Solve the grounded Laplacian system, directly for small systems."""
    size = matrix.shape[0]

    if size <= DIRECT_SOLVE_LIMIT:
        LOGGER.debug(f"direct sparse solve on {size} unknowns")
        return np.atleast_1d(spsolve(matrix.tocsc(), rhs))

    LOGGER.debug(f"preconditioned conjugate gradient on {size} unknowns")
    inverse_diagonal = 1.0 / matrix.diagonal()
    preconditioner = LinearOperator(matrix.shape, matvec=lambda x: inverse_diagonal * x)
    try:
        solution, info = cg(matrix, rhs, rtol=TOLERANCE * 1e-2, maxiter=10 * size, M=preconditioner)
    except TypeError:  # scipy < 1.12 names the relative tolerance `tol`
        solution, info = cg(matrix, rhs, tol=TOLERANCE * 1e-2, maxiter=10 * size, M=preconditioner)
    if info > 0:
        raise SolverError(f"conjugate gradient did not converge after {info} iterations")
    return solution


def solve_voltage(net: Network, source: int, sink: int) -> VoltageSolution:
    """Solve for the potential with `v(source) = 1` and `v(sink) = 0`.

    `v(x)` is the probability that the network walk started at `x` hits
    `source` before `sink`. Vertices outside the component of the
    terminals carry no current and are given potential 0.

    Parameters
    ----------
    `net` : `Network`
        The network.
    `source`, `sink` : `int`
        The terminals.

    Returns
    -------
    `VoltageSolution`
        Potentials, effective conductance, `s` (largest potential next to
        the sink) and level indices with base `d` = max degree off the sink.

    Raises
    ------
    `ValidationError`
        If `source == sink` or a terminal is out of range.
    `DisconnectedError`
        If the terminals are in different components.
    `SolverError`
        If the relative residual exceeds `TOLERANCE`.
    """
    n = net.n_vertices
    if source == sink:
        raise ValidationError("source and sink must differ")
    for terminal in (source, sink):
        if not 0 <= terminal < n:
            raise ValidationError(f"terminal {terminal} out of range [0, {n})")

    weights = net.conductance_matrix
    _, components = connected_components(weights, directed=False)
    if components[source] != components[sink]:
        raise DisconnectedError(f"source {source} and sink {sink} are not connected")

    inside = components == components[source]
    inside[[source, sink]] = False
    interior = np.flatnonzero(inside)

    potentials = np.zeros(n)
    potentials[source] = 1.0
    residual = 0.0

    if len(interior):
        block = weights[interior][:, interior]
        totals = np.asarray(weights[interior].sum(axis=1)).ravel()
        laplacian = (sparse.diags(totals) - block).tocsr()
        rhs = np.asarray(weights[interior][:, [source]].todense()).ravel()

        values = _solve_spd(laplacian, rhs)

        scale = max(np.linalg.norm(rhs), 1.0)
        residual = float(np.linalg.norm(laplacian @ values - rhs) / scale)
        if residual > TOLERANCE:
            raise SolverError(f"relative residual {residual:.3e} above tolerance {TOLERANCE:.0e}")

        potentials[interior] = np.clip(values, 0.0, 1.0)

    source_row = weights.getrow(source)
    conductance = float(source_row.data @ (1.0 - potentials[source_row.indices]))

    sink_row = weights.getrow(sink)
    s = float(potentials[sink_row.indices].max())

    degree = max_degree(net, sink)
    levels = level_indices(potentials, max(degree, 2))

    LOGGER.debug(f"solved {net} between {source} and {sink}: C_eff={conductance:.6g}, s={s:.6g}")

    return VoltageSolution(
        source=int(source),
        sink=int(sink),
        potentials=potentials,
        conductance=conductance,
        s=s,
        degree=degree,
        levels=levels,
        residual=residual,
    )


def contract(net: Network, classes: Sequence[Iterable[int]]) -> Network:
    """Identify the vertices of every class; class `k` becomes vertex `k`.

    Edges internal to a class (and loops) are dropped, parallel edges are
    kept.

    Raises
    ------
    `ValidationError`
        If the classes overlap or do not cover every vertex.
    """
    mapping = np.full(net.n_vertices, -1, dtype=np.int64)
    for k, members in enumerate(classes):
        members = np.fromiter(members, dtype=np.int64)
        if len(members) and (members.min() < 0 or members.max() >= net.n_vertices):
            raise ValidationError(f"class {k} has a vertex out of range")
        if np.any(mapping[members] >= 0):
            raise ValidationError(f"class {k} overlaps an earlier class")
        mapping[members] = k

    if np.any(mapping < 0):
        raise ValidationError(f"{int(np.sum(mapping < 0))} vertices are not covered by the partition")

    return _quotient(net, mapping, len(classes))


def contract_sets(net: Network, groups: Sequence[Iterable[int]]) -> tuple[Network, np.ndarray]:
    """Contract each group to one vertex and keep the other vertices.

    Group `k` becomes vertex `k`; the remaining vertices follow in
    increasing order.

    Returns
    -------
    `tuple[Network, np.ndarray]`
        The quotient network and the map from old to new vertex ids.
    """
    mapping = np.full(net.n_vertices, -1, dtype=np.int64)
    for k, members in enumerate(groups):
        members = np.fromiter(members, dtype=np.int64)
        if not len(members):
            raise ValidationError(f"group {k} is empty")
        if members.min() < 0 or members.max() >= net.n_vertices:
            raise ValidationError(f"group {k} has a vertex out of range")
        if np.any(mapping[members] >= 0):
            raise ValidationError(f"group {k} overlaps an earlier group")
        mapping[members] = k

    rest = np.flatnonzero(mapping < 0)
    mapping[rest] = np.arange(len(groups), len(groups) + len(rest))
    return _quotient(net, mapping, len(groups) + len(rest)), mapping


def _quotient(net: Network, mapping: np.ndarray, size: int) -> Network:
    tails, heads = mapping[net.tails], mapping[net.heads]
    keep = tails != heads
    return Network(size, tails[keep], heads[keep], net.conductances[keep])


def effective_conductance(net: Network, A: Iterable[int], B: Iterable[int]) -> float:
    """Effective conductance between two disjoint vertex sets.

    Both sets are contracted to single terminals before solving.

    Raises
    ------
    `ValidationError`
        If a set is empty or the sets overlap.
    `DisconnectedError`
        If no vertex of `A` is connected to a vertex of `B`.
    """
    A, B = set(int(a) for a in A), set(int(b) for b in B)
    if not A or not B:
        raise ValidationError("terminal sets must be nonempty")
    if A & B:
        raise ValidationError(f"terminal sets overlap in {sorted(A & B)[:5]}")

    contracted, _ = contract_sets(net, [sorted(A), sorted(B)])
    return solve_voltage(contracted, 0, 1).conductance


def effective_resistance(net: Network, A: Iterable[int], B: Iterable[int]) -> float:
    """Reciprocal of `effective_conductance`."""
    return 1.0 / effective_conductance(net, A, B)

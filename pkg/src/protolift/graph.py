"""Tanner multigraph data model and structural metrics.

A Tanner graph is a bipartite multigraph between variable nodes (code
bits) and check nodes (parity constraints).  Parallel edges are
first-class: a protograph entry of 2 means two distinct edges between
the same (variable, check) pair, and the mod-2 parity-check matrix view
drops such pairs while the lift machinery resolves them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
import math

import numpy as np

from .errors import InvalidMatrix, InvalidNode

INFINITE_GIRTH = math.inf


@dataclass(frozen=True)
class TannerGraph:
    """Immutable bipartite multigraph with stable edge ids.

    ``edges[i]`` is the (var_id, check_id) pair of edge i.  Edge ids are
    dense indices into this tuple; node ids are dense in
    ``range(num_vars)`` and ``range(num_checks)``.
    """

    num_vars: int
    num_checks: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(v), int(c)) for v, c in self.edges))
        if self.num_vars < 0 or self.num_checks < 0:
            raise InvalidNode("node counts must be non-negative")
        for v, c in self.edges:
            if not (0 <= v < self.num_vars):
                raise InvalidNode(f"variable id {v} out of range [0, {self.num_vars})")
            if not (0 <= c < self.num_checks):
                raise InvalidNode(f"check id {c} out of range [0, {self.num_checks})")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def var_adjacency(self) -> tuple[tuple[int, ...], ...]:
        """For each variable, the check endpoint of every incident edge
        (parallel edges repeat)."""
        adj: list[list[int]] = [[] for _ in range(self.num_vars)]
        for v, c in self.edges:
            adj[v].append(c)
        return tuple(tuple(a) for a in adj)

    @cached_property
    def check_adjacency(self) -> tuple[tuple[int, ...], ...]:
        """For each check, the variable endpoint of every incident edge
        (parallel edges repeat)."""
        adj: list[list[int]] = [[] for _ in range(self.num_checks)]
        for v, c in self.edges:
            adj[c].append(v)
        return tuple(tuple(a) for a in adj)

    def multiplicity_matrix(self) -> np.ndarray:
        """num_checks x num_vars integer matrix of parallel-edge counts."""
        m = np.zeros((self.num_checks, self.num_vars), dtype=np.int64)
        for v, c in self.edges:
            m[c, v] += 1
        return m

    def has_parallel_edges(self) -> bool:
        return bool(self.edges) and int(self.multiplicity_matrix().max()) > 1


def from_multiplicity_matrix(m) -> TannerGraph:
    """Build a TannerGraph from a check x variable multiplicity matrix.

    Edge ids are assigned row-major (check-major), then by multiplicity,
    so the layout is a deterministic function of the matrix.

    Raises:
        InvalidMatrix: empty matrix, non-integer or negative entries.
    """
    arr = np.asarray(m)
    if arr.ndim != 2 or arr.size == 0:
        raise InvalidMatrix(f"expected a non-empty 2-d matrix, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.all(arr == np.floor(arr)):
            raise InvalidMatrix("multiplicities must be integers")
        arr = arr.astype(np.int64)
    if np.any(arr < 0):
        raise InvalidMatrix("multiplicities must be non-negative")

    rows, cols = arr.shape
    edges = []
    for c in range(rows):
        for v in range(cols):
            edges.extend([(v, c)] * int(arr[c, v]))
    return TannerGraph(num_vars=cols, num_checks=rows, edges=tuple(edges))


def to_parity_matrix(g: TannerGraph) -> np.ndarray:
    """Binary parity-check matrix: H[c, v] = multiplicity(c, v) mod 2."""
    return (g.multiplicity_matrix() % 2).astype(np.uint8)


def node_degrees(g: TannerGraph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(variable degrees, check degrees), counted with edge multiplicity."""
    var_deg = [0] * g.num_vars
    check_deg = [0] * g.num_checks
    for v, c in g.edges:
        var_deg[v] += 1
        check_deg[c] += 1
    return tuple(var_deg), tuple(check_deg)


def girth(g: TannerGraph) -> float:
    """Length of the shortest cycle, or ``math.inf`` for a forest.

    A pair of parallel edges counts as a 2-cycle.  For the remaining
    (simple, bipartite) case this runs a BFS from every node and takes
    the minimum closed-walk estimate, which is exact on bipartite
    graphs: every estimate is at least the girth, and a BFS rooted on a
    shortest (even) cycle attains it.
    """
    if g.num_edges == 0:
        return INFINITE_GIRTH
    mult = g.multiplicity_matrix()
    if int(mult.max()) > 1:
        return 2

    # Simple bipartite graph on num_vars + num_checks nodes; checks are
    # offset by num_vars.
    n = g.num_vars + g.num_checks
    adj: list[list[int]] = [[] for _ in range(n)]
    for v, c in set(g.edges):
        adj[v].append(g.num_vars + c)
        adj[g.num_vars + c].append(v)

    best = math.inf
    for root in range(n):
        if not adj[root]:
            continue
        dist = {root: 0}
        parent = {root: -1}
        queue = [root]
        while queue:
            nxt: list[int] = []
            for u in queue:
                if 2 * dist[u] >= best - 1:
                    break
                for w in adj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        nxt.append(w)
                    elif parent[u] != w and parent[w] != u:
                        best = min(best, dist[u] + dist[w] + 1)
            queue = nxt
    return best if best < math.inf else INFINITE_GIRTH

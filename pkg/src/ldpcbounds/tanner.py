"""Tanner graphs: construction, sampling, and distance queries.

Graphs are immutable after construction and precompute edge-indexed CSR
layouts so message passing and breadth-first searches stay vectorized.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf

import numpy as np

from ._util import as_generator
from .degrees import EnsembleSpec, realize_degree_sequences
from .errors import ConstructionError, InvalidSpecError, SamplingFailureError

DEFAULT_MAX_ATTEMPTS = 10_000


class TannerGraph:
    """Simple bipartite graph between variable and check nodes.

    Parameters
    ----------
    n_vars, n_checks : int
        Node counts on each side.
    edges : iterable of (var, check) pairs
        Edge set; parallel edges are rejected.

    Notes
    -----
    Edges get canonical ids by sorting on (check, variable), so two graphs
    with the same edge set are identical objects for all purposes here.
    """

    def __init__(self, n_vars: int, n_checks: int, edges):
        if n_vars < 1 or n_checks < 1:
            raise InvalidSpecError("graph needs at least one node per side")
        pairs = np.asarray(list(edges), dtype=np.int64)
        if pairs.size == 0:
            pairs = pairs.reshape(0, 2)
        if pairs.ndim != 2 or pairs.shape[1] != 2:
            raise InvalidSpecError("edges must be (var, check) pairs")
        if pairs.size and (
            pairs.min() < 0 or pairs[:, 0].max() >= n_vars or pairs[:, 1].max() >= n_checks
        ):
            raise InvalidSpecError("edge endpoint out of range")
        order = np.lexsort((pairs[:, 0], pairs[:, 1]))
        pairs = pairs[order]
        key = pairs[:, 1] * n_vars + pairs[:, 0]
        if key.size and np.any(np.diff(key) == 0):
            raise InvalidSpecError("parallel edges are not allowed")

        self.n_vars = int(n_vars)
        self.n_checks = int(n_checks)
        self.edge_var = pairs[:, 0].copy()
        self.edge_chk = pairs[:, 1].copy()
        self.n_edges = int(pairs.shape[0])

        # Check-side CSR follows canonical edge order directly.
        self.chk_ptr = np.zeros(n_checks + 1, dtype=np.int64)
        np.add.at(self.chk_ptr, self.edge_chk + 1, 1)
        np.cumsum(self.chk_ptr, out=self.chk_ptr)
        self.chk_edge = np.arange(self.n_edges, dtype=np.int64)

        # Variable-side CSR permutes edge ids into (var, check) order.
        vorder = np.lexsort((self.edge_chk, self.edge_var))
        self.var_ptr = np.zeros(n_vars + 1, dtype=np.int64)
        np.add.at(self.var_ptr, self.edge_var + 1, 1)
        np.cumsum(self.var_ptr, out=self.var_ptr)
        self.var_edge = vorder.astype(np.int64)

    # -- basic accessors -------------------------------------------------

    @property
    def var_degrees(self) -> np.ndarray:
        return np.diff(self.var_ptr)

    @property
    def check_degrees(self) -> np.ndarray:
        return np.diff(self.chk_ptr)

    def var_neighbors(self, v: int) -> np.ndarray:
        """Check nodes adjacent to variable v."""
        e = self.var_edge[self.var_ptr[v]:self.var_ptr[v + 1]]
        return self.edge_chk[e]

    def check_neighbors(self, c: int) -> np.ndarray:
        """Variable nodes adjacent to check c."""
        e = self.chk_edge[self.chk_ptr[c]:self.chk_ptr[c + 1]]
        return self.edge_var[e]

    def edges(self) -> np.ndarray:
        """Canonical (var, check) edge array, shape (E, 2)."""
        return np.column_stack([self.edge_var, self.edge_chk])

    def __eq__(self, other):
        if not isinstance(other, TannerGraph):
            return NotImplemented
        return (
            self.n_vars == other.n_vars
            and self.n_checks == other.n_checks
            and np.array_equal(self.edge_var, other.edge_var)
            and np.array_equal(self.edge_chk, other.edge_chk)
        )

    def __hash__(self):
        return hash((self.n_vars, self.n_checks, self.n_edges))

    def __repr__(self):
        return (
            f"TannerGraph(n_vars={self.n_vars}, n_checks={self.n_checks}, "
            f"n_edges={self.n_edges})"
        )

    @classmethod
    def from_check_neighbors(cls, neighbor_lists, n_vars: int) -> "TannerGraph":
        edges = [(int(v), c) for c, nbrs in enumerate(neighbor_lists) for v in nbrs]
        return cls(n_vars, len(neighbor_lists), edges)


# -- vectorized BFS ------------------------------------------------------


def _gather(indptr: np.ndarray, data: np.ndarray, nodes: np.ndarray) -> np.ndarray:
    """Concatenate data[indptr[u]:indptr[u+1]] over all u in nodes."""
    counts = indptr[nodes + 1] - indptr[nodes]
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=data.dtype)
    starts = np.repeat(indptr[nodes], counts)
    shift = np.repeat(np.cumsum(counts) - counts, counts)
    return data[starts + np.arange(total) - shift]


def bfs_distances(g: TannerGraph, root: int, max_depth: int | None = None,
                  stop_var: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Graph distances from a root variable node, level-synchronous.

    Returns ``(var_dist, chk_dist)`` int arrays with -1 for nodes not
    reached within ``max_depth``.  When ``stop_var`` is given the search
    exits as soon as that variable has been labeled.
    """
    var_dist = np.full(g.n_vars, -1, dtype=np.int64)
    chk_dist = np.full(g.n_checks, -1, dtype=np.int64)
    var_dist[root] = 0
    frontier = np.array([root], dtype=np.int64)
    chk_of_var_edge = g.edge_chk[g.var_edge]
    var_of_chk_edge = g.edge_var  # canonical order is check-sorted already
    depth = 0
    while frontier.size and (max_depth is None or depth < max_depth):
        depth += 1
        if depth % 2 == 1:
            nbrs = _gather(g.var_ptr, chk_of_var_edge, frontier)
            nbrs = nbrs[chk_dist[nbrs] < 0]
            if nbrs.size == 0:
                break
            frontier = np.unique(nbrs)
            chk_dist[frontier] = depth
        else:
            nbrs = _gather(g.chk_ptr, var_of_chk_edge, frontier)
            nbrs = nbrs[var_dist[nbrs] < 0]
            if nbrs.size == 0:
                break
            frontier = np.unique(nbrs)
            var_dist[frontier] = depth
            if stop_var is not None and var_dist[stop_var] >= 0:
                break
    return var_dist, chk_dist


def distance(g: TannerGraph, vi: int, vj: int, max_depth: int | None = None):
    """Shortest-path length between two variable nodes.

    Always an even integer (bipartite parity) or ``math.inf`` when the
    nodes are disconnected or farther than ``max_depth``.
    """
    if vi == vj:
        return 0
    var_dist, _ = bfs_distances(g, vi, max_depth=max_depth, stop_var=vj)
    d = int(var_dist[vj])
    return d if d >= 0 else inf


def variable_distances(g: TannerGraph, v: int, max_depth: int | None = None) -> np.ndarray:
    """Distances from v to every variable node (-1 beyond max_depth)."""
    var_dist, _ = bfs_distances(g, v, max_depth=max_depth)
    return var_dist


# -- neighborhood views --------------------------------------------------


@dataclass(frozen=True)
class NeighborhoodView:
    """Depth-limited BFS neighborhood of a variable node.

    ``levels[d]`` holds the sorted node ids at graph distance exactly d:
    variable ids on even levels, check ids on odd levels.  ``edges`` is
    the (var, check) list induced by the included node set.
    """

    root: int
    depth: int
    levels: tuple[np.ndarray, ...]
    edges: np.ndarray
    tree_like: bool

    @property
    def n_variables(self) -> int:
        return sum(lvl.size for lvl in self.levels[0::2])

    @property
    def n_check_nodes(self) -> int:
        return sum(lvl.size for lvl in self.levels[1::2])

    def variables(self) -> np.ndarray:
        return np.concatenate(list(self.levels[0::2]))

    def check_nodes(self) -> np.ndarray:
        return np.concatenate(list(self.levels[1::2]) or [np.empty(0, np.int64)])


def neighborhood(g: TannerGraph, v: int, k: int) -> NeighborhoodView:
    """Nodes within distance k of v, organized by BFS level.

    Nodes at distance exactly k are included.  The view is tree-like iff
    the induced edge count equals the induced node count minus one.
    """
    if not 0 <= v < g.n_vars:
        raise IndexError(f"variable index {v} out of range")
    if k < 0:
        raise ValueError("depth must be >= 0")
    var_dist, chk_dist = bfs_distances(g, v, max_depth=k)
    levels = []
    for d in range(k + 1):
        if d % 2 == 0:
            levels.append(np.flatnonzero(var_dist == d).astype(np.int64))
        else:
            levels.append(np.flatnonzero(chk_dist == d).astype(np.int64))
    included_chk = np.flatnonzero((chk_dist >= 0) & (chk_dist <= k))
    var_in = (var_dist >= 0) & (var_dist <= k)
    edge_rows = []
    for c in included_chk:
        nbrs = g.check_neighbors(c)
        nbrs = nbrs[var_in[nbrs]]
        if nbrs.size:
            edge_rows.append(np.column_stack([nbrs, np.full(nbrs.size, c, dtype=np.int64)]))
    edges = np.concatenate(edge_rows) if edge_rows else np.empty((0, 2), dtype=np.int64)
    n_nodes = sum(lvl.size for lvl in levels)
    tree_like = edges.shape[0] == n_nodes - 1
    return NeighborhoodView(root=v, depth=k, levels=tuple(levels), edges=edges,
                            tree_like=tree_like)


# -- configuration-model sampling ----------------------------------------


def sample_graph_with_attempts(spec: EnsembleSpec, seed,
                               max_attempts: int = DEFAULT_MAX_ATTEMPTS
                               ) -> tuple[TannerGraph, int]:
    """Uniform simple configuration plus the number of matchings drawn.

    Each attempt draws a fresh uniform socket matching; matchings with
    parallel edges are rejected wholesale, which keeps the accepted graph
    uniform over simple configurations.
    """
    var_degrees, check_degrees = realize_degree_sequences(spec)
    n, m = spec.n_vars, spec.n_checks
    var_sockets = np.repeat(np.arange(n, dtype=np.int64), var_degrees)
    chk_sockets = np.repeat(np.arange(m, dtype=np.int64), check_degrees)
    n_edges = var_sockets.size
    rng = as_generator(seed)
    for attempt in range(1, max_attempts + 1):
        matched = chk_sockets[rng.permutation(n_edges)]
        key = var_sockets * m + matched
        key.sort()
        if n_edges == 0 or not np.any(np.diff(key) == 0):
            edges = np.column_stack([key // m, key % m])
            return TannerGraph(n, m, edges), attempt
    raise SamplingFailureError(
        f"no simple configuration found in {max_attempts} attempts", attempts=max_attempts
    )


def sample_graph(spec: EnsembleSpec, seed,
                 max_attempts: int = DEFAULT_MAX_ATTEMPTS) -> TannerGraph:
    """Uniformly random simple graph from the ensemble, deterministic per seed."""
    graph, _ = sample_graph_with_attempts(spec, seed, max_attempts)
    return graph


# -- progressive edge growth ----------------------------------------------


def peg_construct(n_vars: int, var_degrees, n_checks: int) -> TannerGraph:
    """Greedy progressive-edge-growth construction.

    Variables are processed in ascending (target degree, index) order.
    The first edge of a variable goes to the check with the lowest
    current degree; every later edge goes to a check at maximal distance
    from the variable in the partial graph (unreached checks count as
    infinitely far).  Ties break on lowest current degree, then lowest
    index, so the construction is fully deterministic.

    Candidates are restricted to checks below the balanced ceiling
    ceil(E/M), which concentrates the check degrees (a regular variable
    side with E divisible by M yields an exactly biregular graph); when
    every non-adjacent check is full the ceiling is waived rather than
    failing the construction.
    """
    degrees = np.asarray(var_degrees, dtype=np.int64)
    if degrees.shape != (n_vars,):
        raise ConstructionError("var_degrees must list one degree per variable")
    if n_checks < 1:
        raise ConstructionError("need at least one check node")
    if degrees.size and (degrees.min() < 0 or degrees.max() > n_checks):
        raise ConstructionError(
            "a variable degree exceeds the number of checks (simple graph impossible)"
        )

    max_var_deg = int(degrees.max()) if degrees.size else 0
    var_adj = np.full((n_vars, max(max_var_deg, 1)), -1, dtype=np.int64)
    var_fill = np.zeros(n_vars, dtype=np.int64)
    chk_cap = max(8, int(np.ceil(degrees.sum() / n_checks)) + 4)
    chk_adj = np.full((n_checks, chk_cap), -1, dtype=np.int64)
    chk_deg = np.zeros(n_checks, dtype=np.int64)
    chk_ids = np.arange(n_checks, dtype=np.int64)

    def bfs_check_dist(v: int) -> np.ndarray:
        chk_dist = np.full(n_checks, -1, dtype=np.int64)
        var_seen = np.zeros(n_vars, dtype=bool)
        var_seen[v] = True
        frontier = np.array([v], dtype=np.int64)
        depth = 0
        while frontier.size:
            depth += 1
            cand = var_adj[frontier].ravel()
            cand = cand[cand >= 0]
            cand = np.unique(cand[chk_dist[cand] < 0])
            if cand.size == 0:
                break
            chk_dist[cand] = depth
            depth += 1
            nxt = chk_adj[cand].ravel()
            nxt = nxt[nxt >= 0]
            nxt = np.unique(nxt[~var_seen[nxt]])
            if nxt.size == 0:
                break
            var_seen[nxt] = True
            frontier = nxt
        return chk_dist

    def pick(candidates: np.ndarray) -> int:
        sub = chk_deg[candidates]
        best = np.lexsort((candidates, sub))[0]
        return int(candidates[best])

    cap = int(np.ceil(degrees.sum() / n_checks)) if degrees.sum() else 1

    def under_cap(candidates: np.ndarray) -> np.ndarray:
        open_slots = candidates[chk_deg[candidates] < cap]
        return open_slots if open_slots.size else candidates

    order = np.lexsort((np.arange(n_vars), degrees))
    for v in order:
        for _ in range(int(degrees[v])):
            if var_fill[v] == 0:
                c = pick(under_cap(chk_ids))
            else:
                chk_dist = bfs_check_dist(int(v))
                unreached = chk_ids[chk_dist < 0]
                open_unreached = unreached[chk_deg[unreached] < cap]
                if open_unreached.size:
                    c = pick(open_unreached)
                else:
                    far_order = np.unique(chk_dist)[::-1]
                    c = -1
                    for far in far_order:
                        if far <= 1:
                            break
                        ring = chk_ids[chk_dist == far]
                        ring = ring[chk_deg[ring] < cap]
                        if ring.size:
                            c = pick(ring)
                            break
                    if c < 0:
                        # Every open check sits inside the neighborhood (or
                        # all are full): waive the ceiling, keep max distance.
                        if unreached.size:
                            c = pick(unreached)
                        else:
                            far = int(chk_dist.max())
                            if far <= 1:
                                raise ConstructionError(
                                    f"variable {v} is already adjacent to every check"
                                )
                            c = pick(chk_ids[chk_dist == far])
            var_adj[v, var_fill[v]] = c
            var_fill[v] += 1
            if chk_deg[c] == chk_adj.shape[1]:
                chk_adj = np.hstack(
                    [chk_adj, np.full((n_checks, chk_adj.shape[1]), -1, dtype=np.int64)]
                )
            chk_adj[c, chk_deg[c]] = v
            chk_deg[c] += 1

    edges = [(int(v), int(c)) for v in range(n_vars)
             for c in var_adj[v, :var_fill[v]]]
    return TannerGraph(n_vars, n_checks, edges)


def girth(g: TannerGraph, cutoff: int | None = None) -> float:
    """Length of the shortest cycle, or ``math.inf`` for a forest.

    Runs one BFS per variable node and records the shortest cycle seen
    through each root; ``cutoff`` stops early once a cycle of at most
    that length has been found.  Intended for desk-scale graphs.
    """
    adj: list[list[int]] = [[] for _ in range(g.n_vars + g.n_checks)]
    for v, c in zip(g.edge_var, g.edge_chk):
        adj[v].append(g.n_vars + int(c))
        adj[g.n_vars + int(c)].append(int(v))
    best = inf
    for root in range(g.n_vars):
        dist = {root: 0}
        parent = {root: -1}
        queue = [root]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            if 2 * dist[u] >= best:
                continue
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w and parent[w] != u:
                    best = min(best, dist[u] + dist[w] + 1)
        if best == 4:
            break  # bipartite minimum; nothing shorter exists
        if cutoff is not None and best <= cutoff:
            break
    return best

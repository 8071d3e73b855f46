"""Ground-truth minimum-weight computation on small decoding neighborhoods.

A depth-limited neighborhood of a variable node induces a local GF(2)
system: one binary variable per distinct variable node within distance
2l of the root, one parity row per check node within distance 2l-1 over
that check's full neighbor set.  Repeated occurrences of a variable in
the unrolled message-passing tree are identified, i.e. they share one
GF(2) variable.  The oracle enumerates the affine solution set with the
root pinned to 1 and returns the minimum Hamming weight, guarded by a
free-dimension cap.

A complementary backtracking search looks for the structured subtree
whose all-ones assignment is a valid local codeword: every internal
variable keeps all its neighbors, every internal check has exactly one
parent and one child, and leaf checks hang off exactly one tree node.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._util import STREAM_ORACLE_GRAPH, STREAM_ORACLE_NODE, derived_rng
from .degrees import EnsembleSpec
from .errors import CapacityError
from .tanner import TannerGraph, bfs_distances, sample_graph

DEFAULT_MAX_FREE_DIM = 28


@dataclass(frozen=True)
class Gf2System:
    """Local parity system around a root variable.

    ``variables`` lists distinct graph variable ids (root first);
    ``rows`` holds parity constraints as tuples of local indices;
    ``checks`` records which graph check produced each row.
    """

    variables: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]
    checks: tuple[int, ...]
    root_local: int = 0

    @property
    def n_variables(self) -> int:
        return len(self.variables)


def local_system(g: TannerGraph, v: int, iterations: int) -> Gf2System:
    """GF(2) system induced by the depth-2l neighborhood of v.

    Variables are the distinct variable nodes within distance 2l; rows
    come from checks within distance 2l-1, each over its full neighbor
    set (bipartite parity keeps those neighbors inside the window).
    """
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    depth = 2 * iterations
    var_dist, chk_dist = bfs_distances(g, v, max_depth=depth)
    var_ids = np.flatnonzero((var_dist >= 0) & (var_dist <= depth))
    ordered = [int(v)] + [int(u) for u in var_ids if u != v]
    local = {u: i for i, u in enumerate(ordered)}
    rows = []
    checks = []
    chk_ids = np.flatnonzero((chk_dist >= 0) & (chk_dist <= depth - 1))
    for c in chk_ids:
        nbrs = g.check_neighbors(int(c))
        rows.append(tuple(sorted(local[int(u)] for u in nbrs)))
        checks.append(int(c))
    return Gf2System(variables=tuple(ordered), rows=tuple(rows),
                     checks=tuple(checks), root_local=0)


def _solve_affine(sys: Gf2System) -> tuple[int, list[int]] | None:
    """Particular solution and null-space basis of the root=1 system.

    Solutions are bitmask ints over local variable indices.  Returns
    None when pinning the root to 1 is inconsistent.
    """
    rows: list[tuple[int, int]] = []
    for r in sys.rows:
        mask = 0
        for i in r:
            mask |= 1 << i
        rows.append((mask, 0))
    rows.append((1 << sys.root_local, 1))

    pivots: dict[int, tuple[int, int]] = {}
    for mask, rhs in rows:
        while mask:
            col = (mask & -mask).bit_length() - 1
            if col in pivots:
                pmask, prhs = pivots[col]
                mask ^= pmask
                rhs ^= prhs
            else:
                pivots[col] = (mask, rhs)
                break
        if mask == 0 and rhs == 1:
            return None

    # Back-substitution to reduced form: each pivot row may only carry
    # free columns besides its own pivot.
    for col in sorted(pivots, reverse=True):
        mask, rhs = pivots[col]
        for col2 in sorted(pivots):
            if col2 != col and (mask >> col2) & 1:
                m2, r2 = pivots[col2]
                mask ^= m2
                rhs ^= r2
        pivots[col] = (mask, rhs)

    particular = 0
    for col, (_, rhs) in pivots.items():
        if rhs:
            particular |= 1 << col
    free_cols = [i for i in range(sys.n_variables) if i not in pivots]
    basis = []
    for f in free_cols:
        vec = 1 << f
        for col, (mask, _) in pivots.items():
            if (mask >> f) & 1:
                vec |= 1 << col
        basis.append(vec)
    return particular, basis


def min_weight_root_one(sys: Gf2System,
                        max_free_dim: int = DEFAULT_MAX_FREE_DIM) -> int | None:
    """Minimum Hamming weight over local solutions with the root set to 1.

    Returns None when no such solution exists.  The affine solution set
    is walked in Gray-code order so each step flips one basis vector;
    a CapacityError is raised when the free dimension exceeds
    ``max_free_dim`` (callers must shrink the window or the graph).
    """
    solved = _solve_affine(sys)
    if solved is None:
        return None
    particular, basis = solved
    if len(basis) > max_free_dim:
        raise CapacityError(
            f"free dimension {len(basis)} exceeds guard {max_free_dim}"
        )
    best_vec = particular
    best = particular.bit_count()
    current = particular
    for step in range(1, 1 << len(basis)):
        flip = (step & -step).bit_length() - 1
        current ^= basis[flip]
        w = current.bit_count()
        if w < best:
            best = w
            best_vec = current
    _verify_solution(sys, best_vec)
    return best


def _verify_solution(sys: Gf2System, vec: int) -> None:
    assert (vec >> sys.root_local) & 1 == 1
    for row in sys.rows:
        parity = 0
        for i in row:
            parity ^= (vec >> i) & 1
        assert parity == 0, "enumerated solution violates a parity row"


# -- structured low-weight subtree ----------------------------------------


@dataclass(frozen=True)
class ValidTree:
    """Height-(2l+1) subtree whose all-ones assignment is a local codeword.

    ``levels[d]`` lists node ids at distance d from the root: variables
    on even levels, checks on odd levels.  The weight is the variable
    count, which the parity argument makes the codeword weight.
    """

    levels: tuple[tuple[int, ...], ...]

    @property
    def weight(self) -> int:
        return sum(len(lvl) for lvl in self.levels[0::2])

    @property
    def height(self) -> int:
        return len(self.levels) - 1


def valid_tree_search(g: TannerGraph, v: int, iterations: int) -> ValidTree | None:
    """Backtracking search for a weight-carrying subtree rooted at v.

    Level by level: each chosen variable pulls in all its checks one
    level down; checks below the leaf level each pick exactly one child
    variable whose only upward neighbor is that check; collisions where
    two tree nodes would share a check abort the branch.  Returns None
    when no such subtree of full height exists.
    """
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    height = 2 * iterations + 1
    var_dist, chk_dist = bfs_distances(g, v, max_depth=height)

    def down_checks(u: int, level: int) -> list[int]:
        return [int(c) for c in g.var_neighbors(u) if chk_dist[c] == level + 1]

    def up_checks(u: int, level: int) -> list[int]:
        return [int(c) for c in g.var_neighbors(u) if chk_dist[c] == level - 1]

    def extend(levels: list[tuple[int, ...]], t: int) -> list[tuple[int, ...]] | None:
        vars_here = levels[-1]
        checks: list[int] = []
        seen: set[int] = set()
        for u in vars_here:
            for c in down_checks(u, 2 * t):
                if c in seen:
                    return None  # a shared check would get two parents
                seen.add(c)
                checks.append(c)
        if 2 * t + 1 == height:
            return levels + [tuple(checks)]
        if not checks:
            return None  # the subtree must reach full height
        candidates: list[list[int]] = []
        for c in checks:
            options = [
                int(u) for u in g.check_neighbors(c)
                if var_dist[u] == 2 * t + 2 and up_checks(int(u), 2 * t + 2) == [c]
            ]
            if not options:
                return None
            candidates.append(options)

        def assign(idx: int, chosen: list[int]) -> list[tuple[int, ...]] | None:
            if idx == len(checks):
                return extend(levels + [tuple(checks), tuple(chosen)], t + 1)
            for u in candidates[idx]:
                result = assign(idx + 1, chosen + [u])
                if result is not None:
                    return result
            return None

        return assign(0, [])

    result = extend([(int(v),)], 0)
    if result is None:
        return None
    return ValidTree(levels=tuple(result))


# -- ensemble Monte Carlo ---------------------------------------------------


@dataclass(frozen=True)
class MinWeightEstimate:
    """Ensemble average of the root-constrained minimum weight.

    ``weights`` holds the per-sample minima actually computed;
    infeasible root=1 systems and capacity-skipped samples are counted,
    never silently dropped.
    """

    mean: float
    std_error: float
    n_samples: int
    infeasible_count: int
    capacity_skipped: int
    weights: np.ndarray


def expected_min_weight_mc(spec: EnsembleSpec, iterations: int, n_samples: int,
                           seed: int, max_free_dim: int = DEFAULT_MAX_FREE_DIM
                           ) -> MinWeightEstimate:
    """Two-stage Monte Carlo: fresh graph per sample, then a uniform root."""
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    weights = []
    infeasible = 0
    skipped = 0
    for i in range(n_samples):
        g = sample_graph(spec, derived_rng(seed, STREAM_ORACLE_GRAPH, i))
        v = int(derived_rng(seed, STREAM_ORACLE_NODE, i).integers(spec.n_vars))
        system = local_system(g, v, iterations)
        try:
            w = min_weight_root_one(system, max_free_dim=max_free_dim)
        except CapacityError:
            skipped += 1
            continue
        if w is None:
            infeasible += 1
        else:
            weights.append(w)
    arr = np.asarray(weights, dtype=np.float64)
    mean = float(arr.mean()) if arr.size else float("nan")
    std_error = float(arr.std(ddof=1) / np.sqrt(arr.size)) if arr.size > 1 else 0.0
    return MinWeightEstimate(mean=mean, std_error=std_error, n_samples=n_samples,
                             infeasible_count=infeasible, capacity_skipped=skipped,
                             weights=arr)

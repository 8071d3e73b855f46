import math
from collections import deque

import numpy as np
import pytest

from ldpcbounds import (ConstructionError, DegreeDistribution, EnsembleSpec,
                        InvalidSpecError, TannerGraph, distance, girth,
                        neighborhood, peg_construct, sample_graph,
                        sample_graph_with_attempts, variable_distances)


def reference_distance(g, vi, vj):
    """Plain deque BFS, independent of the vectorized implementation."""
    if vi == vj:
        return 0
    seen_v = {vi}
    seen_c = set()
    queue = deque([("v", vi, 0)])
    while queue:
        side, u, d = queue.popleft()
        if side == "v":
            for c in g.var_neighbors(u):
                if int(c) not in seen_c:
                    seen_c.add(int(c))
                    queue.append(("c", int(c), d + 1))
        else:
            for w in g.check_neighbors(u):
                if int(w) == vj:
                    return d + 1
                if int(w) not in seen_v:
                    seen_v.add(int(w))
                    queue.append(("v", int(w), d + 1))
    return math.inf


class TestTannerGraph:
    def test_parallel_edges_rejected(self):
        with pytest.raises(InvalidSpecError):
            TannerGraph(2, 1, [(0, 0), (0, 0)])

    def test_out_of_range_rejected(self):
        with pytest.raises(InvalidSpecError):
            TannerGraph(2, 1, [(2, 0)])

    def test_degrees_and_neighbors(self, tree_graph):
        assert tree_graph.n_edges == 12
        assert tree_graph.var_degrees[0] == 3
        assert (tree_graph.check_degrees == 4).all()
        assert sorted(tree_graph.check_neighbors(1)) == [0, 4, 5, 6]
        assert sorted(tree_graph.var_neighbors(0)) == [0, 1, 2]

    def test_edge_count_matches_degree_sums(self, tree_graph):
        assert tree_graph.var_degrees.sum() == tree_graph.n_edges
        assert tree_graph.check_degrees.sum() == tree_graph.n_edges

    def test_equality_is_edge_set_equality(self):
        a = TannerGraph(3, 2, [(0, 0), (1, 1), (2, 0)])
        b = TannerGraph(3, 2, [(2, 0), (0, 0), (1, 1)])
        assert a == b


class TestSampling:
    def test_degree_bookkeeping(self):
        spec = EnsembleSpec(8, DegreeDistribution.regular(3), DegreeDistribution.regular(4))
        g = sample_graph(spec, 5)
        assert g.n_vars == 8 and g.n_checks == 6 and g.n_edges == 24
        assert (g.var_degrees == 3).all()
        assert (g.check_degrees == 4).all()

    def test_deterministic_per_seed(self, spec34_900):
        assert sample_graph(spec34_900, 123) == sample_graph(spec34_900, 123)
        assert sample_graph(spec34_900, 123) != sample_graph(spec34_900, 124)

    def test_rejection_statistics(self, spec34_900):
        attempts = [sample_graph_with_attempts(spec34_900, s)[1] for s in range(200)]
        first_try = sum(1 for a in attempts if a == 1)
        # Simple-on-first-matching happens with probability around
        # exp(-(j-1)(k-1)/2) ~ 5%, so some successes must show up.
        assert first_try > 0
        assert np.mean(attempts) < 200

    def test_sampled_degrees_stay_in_support(self):
        var = DegreeDistribution("node", {2: 0.5, 3: 0.5})
        chk = DegreeDistribution("node", {4: 0.6, 5: 0.4})
        spec = EnsembleSpec(120, var, chk)
        g = sample_graph(spec, 9)
        assert set(np.unique(g.var_degrees)) <= {2, 3}
        assert set(np.unique(g.check_degrees)) <= {4, 5}
        assert g.var_degrees.sum() == g.check_degrees.sum() == g.n_edges


class TestDistances:
    def test_same_node(self, tree_graph):
        assert distance(tree_graph, 0, 0) == 0

    def test_path_graph(self):
        g = TannerGraph(2, 1, [(0, 0), (1, 0)])
        assert distance(g, 0, 1) == 2

    def test_disconnected_pair(self):
        g = TannerGraph(4, 2, [(0, 0), (1, 0), (2, 1), (3, 1)])
        assert distance(g, 0, 2) == math.inf

    def test_variable_distances_even_or_unreached(self, spec34_900):
        g = sample_graph(spec34_900, 3)
        d = variable_distances(g, 17)
        reached = d[d >= 0]
        assert (reached % 2 == 0).all()

    def test_matches_reference_bfs(self):
        spec = EnsembleSpec(24, DegreeDistribution.regular(3), DegreeDistribution.regular(4))
        for seed in range(3):
            g = sample_graph(spec, seed)
            for vi in range(0, 24, 5):
                for vj in range(24):
                    assert distance(g, vi, vj) == reference_distance(g, vi, vj)


class TestNeighborhood:
    def test_depth_zero(self, tree_graph):
        view = neighborhood(tree_graph, 0, 0)
        assert view.n_variables == 1 and view.n_check_nodes == 0
        assert view.tree_like

    def test_tree_like_two_levels(self, tree_graph):
        view = neighborhood(tree_graph, 0, 2)
        assert [lvl.size for lvl in view.levels] == [1, 3, 9]
        assert view.n_variables == 10
        assert view.tree_like

    def test_toy_code_depth_four_covers_every_variable(self, toy4_graph):
        assert sorted(toy4_graph.var_neighbors(0)) == [0, 2]
        view = neighborhood(toy4_graph, 0, 4)
        assert sorted(view.variables().tolist()) == [0, 1, 2, 3]

    def test_levels_partition_by_distance(self, spec34_900):
        g = sample_graph(spec34_900, 21)
        view = neighborhood(g, 5, 4)
        for d, lvl in enumerate(view.levels):
            for u in lvl:
                if d % 2 == 0:
                    assert distance(g, 5, int(u)) == d

    def test_node_set_matches_per_pair_distances(self):
        spec = EnsembleSpec(48, DegreeDistribution.regular(3), DegreeDistribution.regular(4))
        for seed in range(3):
            g = sample_graph(spec, seed)
            for v in range(0, 48, 7):
                for k in (0, 2, 4):
                    view = neighborhood(g, v, k)
                    got = set(view.variables().tolist())
                    want = {u for u in range(48)
                            if reference_distance(g, v, u) <= k}
                    assert got == want

    def test_cycle_detection(self):
        # 4-cycle: two checks sharing two variables.
        g = TannerGraph(2, 2, [(0, 0), (1, 0), (0, 1), (1, 1)])
        view = neighborhood(g, 0, 2)
        assert not view.tree_like


class TestPeg:
    def test_degree_one_gives_perfect_matching(self):
        g = peg_construct(4, [1, 1, 1, 1], 4)
        assert g.edges().tolist() == [[0, 0], [1, 1], [2, 2], [3, 3]]
        assert girth(g) == math.inf

    def test_biregular_output(self):
        g = peg_construct(504, [3] * 504, 378)
        assert (g.var_degrees == 3).all()
        assert (g.check_degrees == 4).all()

    def test_deterministic(self):
        assert peg_construct(60, [3] * 60, 45) == peg_construct(60, [3] * 60, 45)

    def test_infeasible_degree_rejected(self):
        with pytest.raises(ConstructionError):
            peg_construct(2, [3, 3], 2)

    def test_girth_beats_configuration_model(self):
        g_peg = peg_construct(504, [3] * 504, 378)
        peg_girth = girth(g_peg)
        spec = EnsembleSpec(504, DegreeDistribution.regular(3), DegreeDistribution.regular(4))
        wins = sum(peg_girth >= girth(sample_graph(spec, s)) for s in range(10))
        assert wins >= 9

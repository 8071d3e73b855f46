import numpy as np
import pytest

from ldpcbounds import (CapacityError, DegreeDistribution, EnsembleSpec,
                        TannerGraph, expected_min_weight_mc, local_system,
                        min_weight_root_one, neighborhood, sample_graph,
                        valid_tree_counts, valid_tree_prob_lower,
                        valid_tree_search)


def brute_force_min_weight(system):
    """Direct enumeration over all assignments, independent of the solver."""
    best = None
    for assignment in range(1 << system.n_variables):
        if not (assignment >> system.root_local) & 1:
            continue
        if all(sum((assignment >> i) & 1 for i in row) % 2 == 0
               for row in system.rows):
            w = bin(assignment).count("1")
            if best is None or w < best:
                best = w
    return best


class TestLocalSystem:
    def test_depth_zero(self, tree_graph):
        sys0 = local_system(tree_graph, 0, 0)
        assert sys0.n_variables == 1
        assert sys0.rows == ()

    def test_tree_fixture(self, tree_graph):
        sys1 = local_system(tree_graph, 0, 1)
        assert sys1.n_variables == 10
        assert len(sys1.rows) == 3
        assert sys1.variables[0] == 0

    def test_toy_code_window(self, toy4_graph):
        sys2 = local_system(toy4_graph, 0, 2)
        assert sys2.n_variables == 4
        assert len(sys2.rows) == 3  # all checks sit within distance 3

    def test_rows_cover_full_check_neighborhoods(self, spec34_900):
        g = sample_graph(spec34_900, 50)
        system = local_system(g, 3, 1)
        for row, c in zip(system.rows, system.checks):
            assert len(row) == g.check_degrees[c]


class TestMinWeightRootOne:
    def test_isolated_root(self, tree_graph):
        assert min_weight_root_one(local_system(tree_graph, 0, 0)) == 1

    def test_forced_pair(self):
        g = TannerGraph(2, 1, [(0, 0), (1, 0)])
        assert min_weight_root_one(local_system(g, 0, 1)) == 2

    def test_tree_like_window_weight(self, tree_graph):
        assert min_weight_root_one(local_system(tree_graph, 0, 1)) == 4

    def test_matches_brute_force_on_random_small_graphs(self):
        spec = EnsembleSpec(16, DegreeDistribution.regular(3),
                            DegreeDistribution.regular(4))
        for seed in range(6):
            g = sample_graph(spec, seed)
            for v in (0, 5, 11):
                system = local_system(g, v, 1)
                assert min_weight_root_one(system) == brute_force_min_weight(system)

    def test_infeasible_root(self):
        # Root's only check has degree 1: parity forces the root to 0.
        g = TannerGraph(1, 1, [(0, 0)])
        assert min_weight_root_one(local_system(g, 0, 1)) is None

    def test_capacity_guard(self, spec34_900):
        g = sample_graph(spec34_900, 51)
        with pytest.raises(CapacityError):
            min_weight_root_one(local_system(g, 0, 3), max_free_dim=4)


class TestValidTreeSearch:
    def test_tree_like_regular_window(self, tree_graph):
        tree = valid_tree_search(tree_graph, 0, 1)
        assert tree is not None
        expect, _ = valid_tree_counts(3, 2)
        assert tree.weight == expect == 4

    def test_degree_one_check_blocks_search(self):
        g = TannerGraph(2, 2, [(0, 0), (1, 0), (0, 1)])
        assert valid_tree_search(g, 0, 1) is None

    def test_found_tree_bounds_the_oracle(self):
        spec = EnsembleSpec(28, DegreeDistribution.regular(3),
                            DegreeDistribution.regular(4))
        found = 0
        for seed in range(12):
            g = sample_graph(spec, seed)
            for v in range(0, 28, 3):
                tree = valid_tree_search(g, v, 1)
                if tree is None:
                    continue
                found += 1
                w = min_weight_root_one(local_system(g, v, 1))
                assert w is not None and w <= tree.weight
        assert found >= 20

    def test_regular_tree_weight_formula(self, spec34_900):
        g = sample_graph(spec34_900, 52)
        hits = 0
        for v in range(40):
            tree = valid_tree_search(g, v, 2)
            if tree is not None:
                hits += 1
                assert tree.weight == valid_tree_counts(3, 4)[0] == 10
        assert hits > 0


class TestExpectedMinWeightMc:
    def test_depth_zero_mean_is_one(self, spec34_900):
        est = expected_min_weight_mc(spec34_900, 0, 40, seed=1)
        assert est.mean == 1.0
        assert est.std_error == 0.0

    def test_reproducible(self):
        spec = EnsembleSpec(32, DegreeDistribution.regular(3),
                            DegreeDistribution.regular(4))
        a = expected_min_weight_mc(spec, 1, 60, seed=5)
        b = expected_min_weight_mc(spec, 1, 60, seed=5)
        assert np.array_equal(a.weights, b.weights)
        assert a.mean == b.mean

    def test_lemma_comparison_at_900(self, spec34_900):
        est = expected_min_weight_mc(spec34_900, 1, 120, seed=6)
        assert est.capacity_skipped == 0
        bound = valid_tree_prob_lower(3, 4, 900, 1)
        frac = float((est.weights <= 4).mean())
        se = np.sqrt(max(frac * (1 - frac), 0.25 / est.weights.size) / est.weights.size)
        assert frac >= bound - 3 * se
        assert est.mean <= 4.0 + 3 * est.std_error


class TestTreeLikeNeighborhoodEquivalence:
    def test_minimum_weight_is_four_on_tree_like_views(self):
        spec = EnsembleSpec(300, DegreeDistribution.regular(3),
                            DegreeDistribution.regular(4))
        checked = 0
        for seed in range(8):
            g = sample_graph(spec, seed)
            for v in range(0, 300, 17):
                if neighborhood(g, v, 2).tree_like:
                    assert min_weight_root_one(local_system(g, v, 1)) == 4
                    checked += 1
        assert checked >= 50

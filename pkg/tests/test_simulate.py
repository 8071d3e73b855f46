import numpy as np
import pytest

from ldpcbounds import (Bec, Biawgn, DegreeDistribution, EnsembleSpec,
                        estimate_ber, q_function, sample_graph)


@pytest.fixture(scope="module")
def small_graph():
    spec = EnsembleSpec(120, DegreeDistribution.regular(3), DegreeDistribution.regular(4))
    return sample_graph(spec, 2)


class TestEstimateBer:
    def test_noiseless_bec(self, small_graph):
        est = estimate_ber(small_graph, Bec(0.0), 2, 10, seed=1)
        assert est.ber == 0.0

    def test_fully_erased_bec_half_error(self, small_graph):
        est = estimate_ber(small_graph, Bec(1.0), 2, 10, seed=1)
        assert est.ber == 0.5
        assert est.std_error == 0.0

    def test_uncoded_awgn_matches_q(self, small_graph):
        sigma2 = 1.0
        est = estimate_ber(small_graph, Biawgn(sigma2), 0, 400, seed=3)
        expect = q_function(1.0 / np.sqrt(sigma2))
        assert abs(est.ber - expect) < 4 * max(est.std_error, 1e-4)

    def test_decoding_helps_on_bec(self, small_graph):
        raw = estimate_ber(small_graph, Bec(0.3), 0, 200, seed=4)
        dec = estimate_ber(small_graph, Bec(0.3), 3, 200, seed=4)
        assert dec.ber < raw.ber

    def test_deterministic_across_thread_counts(self, small_graph):
        a = estimate_ber(small_graph, Bec(0.4), 2, 60, seed=9, threads=1)
        b = estimate_ber(small_graph, Bec(0.4), 2, 60, seed=9, threads=4)
        assert a == b

    def test_ensemble_mode_samples_fresh_graphs(self):
        spec = EnsembleSpec(60, DegreeDistribution.regular(3), DegreeDistribution.regular(4))
        a = estimate_ber(spec, Bec(0.4), 1, 60, seed=5)
        b = estimate_ber(spec, Bec(0.4), 1, 60, seed=5, threads=3)
        assert a == b
        assert 0.0 < a.ber < 0.5

    def test_counts_are_exact(self, small_graph):
        est = estimate_ber(small_graph, Bec(0.5), 1, 50, seed=6)
        assert est.n_bits == 50 * 120
        assert est.ber == est.half_error_units / (2.0 * est.n_bits)

    def test_rejects_zero_trials(self, small_graph):
        with pytest.raises(ValueError):
            estimate_ber(small_graph, Bec(0.1), 1, 0, seed=1)

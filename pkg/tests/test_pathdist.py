from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import enumerate_path_dist
from swqnet import (
    DomainError,
    NetworkParams,
    clustering_coefficient,
    mean_actual_distance,
    mean_network_distance,
    path_dist_directed,
    path_dist_undirected,
)
from swqnet.pathdist import undirected_prob_matrix


def test_network_params():
    params = NetworkParams(n=1000, p=0.05)
    assert params.m == pytest.approx(50)
    assert params.max_distance == 500
    assert NetworkParams(100, 0.1, directed=True).max_distance == 99
    assert NetworkParams.from_mean_shortcuts(1000, 50).p == pytest.approx(0.05)
    with pytest.raises(DomainError):
        NetworkParams(2, 0.1)
    with pytest.raises(DomainError):
        NetworkParams(10, 1.5)


class TestDirected:
    def test_no_shortcuts(self):
        d = path_dist_directed(5, 0.0)
        np.testing.assert_array_equal(d.probs, [0, 0, 0, 0, 1])
        assert d.normalization_deficit == 0.0

    def test_all_shortcuts(self):
        d = path_dist_directed(5, 1.0)
        np.testing.assert_array_equal(d.raw, [1, 0, 0, 0, 0])
        np.testing.assert_array_equal(d.probs, [1, 0, 0, 0, 0])
        assert d.normalization_deficit == 0.0

    def test_deficit_recorded_and_repaired(self):
        d = path_dist_directed(2, 0.1)
        np.testing.assert_allclose(d.raw, [0.01, 0.729], atol=1e-15)
        assert d.normalization_deficit == pytest.approx(0.261, abs=1e-12)
        np.testing.assert_allclose(d.probs, [0.01, 0.99], atol=1e-15)

    def test_rescale_policy(self):
        d = path_dist_directed(2, 0.1, repair="rescale")
        np.testing.assert_allclose(d.probs, [0.01 / 0.739, 0.729 / 0.739])
        with pytest.raises(DomainError):
            path_dist_directed(2, 0.1, repair="spread")

    def test_unit_distance(self):
        assert path_dist_directed(1, 0.3).probs.tolist() == [1.0]

    @pytest.mark.parametrize("r,p", [(2, 0.3), (4, 0.2), (5, 0.5), (6, 0.15)])
    def test_tail_repair_is_exact_on_small_rings(self, r, p):
        exact = enumerate_path_dist(12, r, p, directed=True)
        np.testing.assert_allclose(path_dist_directed(r, p).probs, exact, atol=1e-12)


class TestUndirected:
    def test_no_shortcuts(self):
        np.testing.assert_array_equal(path_dist_undirected(4, 0.0).probs, [0, 0, 0, 1])

    def test_half(self):
        d = path_dist_undirected(3, 0.5)
        np.testing.assert_allclose(d.probs, [0.25, 0.375, 0.375], atol=1e-15)

    def test_large_p_stays_normalized(self):
        # exact rational evaluation of the interior masses
        p = Fraction(9, 10)
        interior = [p * p] + [
            p * p * (1 - p) ** (2 * l - 4) * (2 - p) * (2 * l - p * l - 2) for l in range(2, 5)
        ]
        tail = 1 - sum(interior)
        assert tail == Fraction(79, 25_000_000)
        d = path_dist_undirected(5, 0.9)
        assert d.probs[-1] == pytest.approx(float(tail), abs=1e-15)
        assert d.normalization_deficit == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("r,p", [(2, 0.3), (3, 0.5), (4, 0.2), (5, 0.35), (6, 0.1)])
    def test_exact_on_small_rings(self, r, p):
        exact = enumerate_path_dist(12, r, p, directed=False)
        np.testing.assert_allclose(path_dist_undirected(r, p).probs, exact, atol=1e-12)

    def test_matrix_matches_rows(self):
        ps = np.linspace(0, 1, 41)
        mat = undirected_prob_matrix(25, ps)
        for row, p in zip(mat, ps):
            np.testing.assert_allclose(row, path_dist_undirected(25, p).probs, atol=1e-15)
        with pytest.raises(DomainError):
            undirected_prob_matrix(5, [0.1, 1.2])


@settings(max_examples=200)
@given(st.integers(1, 400), st.floats(0, 1), st.booleans())
def test_repaired_distributions_are_proper(r, p, directed):
    d = path_dist_directed(r, p) if directed else path_dist_undirected(r, p)
    assert d.probs.shape == (r,)
    assert np.all(d.probs >= 0) and np.all(d.probs <= 1)
    assert abs(d.probs.sum() - 1.0) < 1e-9
    assert d.mean() <= r + 1e-9


@pytest.mark.parametrize("directed", [False, True])
def test_stochastic_dominance(directed):
    ps = np.linspace(0, 1, 51)
    for r in (2, 5, 20, 100):
        cdfs = [
            (path_dist_directed(r, p) if directed else path_dist_undirected(r, p)).cdf()
            for p in ps
        ]
        for lo, hi in zip(cdfs, cdfs[1:]):
            assert np.all(hi >= lo - 1e-12)


class TestMeans:
    def test_no_shortcuts(self):
        for r in (1, 7, 40):
            assert mean_actual_distance(r, 0.0) == r
            assert mean_actual_distance(r, 0.0, directed=True) == r

    def test_strictly_below_r_with_shortcuts(self):
        for r in (2, 7, 40):
            assert mean_actual_distance(r, 1e-3) < r

    def test_directed_full(self):
        assert mean_actual_distance(5, 1.0, directed=True) == 1.0

    def test_undirected_decreasing(self):
        vals = [mean_actual_distance(10, p) for p in (0.05, 0.1, 0.2, 0.4)]
        assert 1 < vals[0] < 10
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_network_mean_without_shortcuts(self):
        assert mean_network_distance(NetworkParams(100, 0.0, directed=True)) == 50.0
        assert mean_network_distance(NetworkParams(100, 0.0)) == 25.5

    def test_network_mean_monotone(self):
        grid = np.arange(0, 0.51, 0.02)
        vals = [mean_network_distance(NetworkParams(100, p, directed=True)) for p in grid]
        assert vals[1] < 50
        assert np.all(np.diff(vals) < 0)


def test_clustering_coefficient():
    assert clustering_coefficient(0) == 0
    assert clustering_coefficient(1) == 1
    assert clustering_coefficient(0.1) == pytest.approx(0.01)
    with pytest.raises(DomainError):
        clustering_coefficient(1.1)

"""Local distance-correlation maps: fixtures, oracles, and exact symmetries.

Worked chain fixture (x = y = (0, 1, 3)): the centered matrix is
[[0, -0.5, 0.5], [-1, 0, -0.5], [1, 0.5, 0]] and the rank matrix is
[[1, 2, 3], [2, 1, 2], [3, 3, 1]]. At scale (2, 2) only the four rank-≤2
off-diagonal entries survive, giving cross-moment 1/6, truncated mean -1/3,
and covariance 1/6 - 1/9 = 1/18; the matching variance makes the correlation
exactly 1. At full scale the means vanish and cov = var = 1/4.
"""

import numpy as np
import pytest

from helpers import chain_matrix, gaussian_matrix, gaussian_pairs
from mgcorr.distances import DataMatrix, DistanceRankPair
from mgcorr.errors import DimensionMismatchError, ParameterError
from mgcorr.localmap import NAIVE_MAX_N, default_eps_guard, local_corr_map, local_map_naive
from oracles import local_map_oracle


def chain_map():
    pair = DistanceRankPair.from_data(chain_matrix())
    return local_corr_map(pair, pair)


class TestChainFixture:
    def test_cov_cells(self):
        m = chain_map()
        assert m.cov_at(2, 2) == pytest.approx(1.0 / 18.0, abs=1e-15)
        assert m.cov_at(3, 3) == pytest.approx(0.25, abs=1e-15)

    def test_var_cells(self):
        m = chain_map()
        assert m.var_x[1] == pytest.approx(1.0 / 18.0, abs=1e-15)
        assert m.var_x[2] == pytest.approx(0.25, abs=1e-15)

    def test_unit_correlations(self):
        m = chain_map()
        assert m.corr_at(2, 2) == pytest.approx(1.0, abs=1e-12)
        assert m.corr_at(3, 3) == pytest.approx(1.0, abs=1e-12)

    def test_scale_one_row_and_column_are_zero(self):
        m = chain_map()
        np.testing.assert_array_equal(m.corr[0, :], np.zeros(3))
        np.testing.assert_array_equal(m.corr[:, 0], np.zeros(3))

    def test_first_variance_is_exact_zero(self):
        m = chain_map()
        assert m.var_x[0] == 0.0
        assert m.var_y[0] == 0.0


class TestAgainstPurePythonOracle:
    @pytest.mark.parametrize("n,p,q,seed", [(6, 1, 1, 0), (9, 2, 1, 1), (12, 1, 3, 2)])
    def test_all_four_maps(self, n, p, q, seed):
        xp, yp = gaussian_pairs(n, p=p, q=q, seed=seed)
        got = local_corr_map(xp, yp)
        cov, var_x, var_y, corr = local_map_oracle(xp.dist, yp.dist, got.eps_guard)
        np.testing.assert_allclose(got.cov, cov, rtol=0, atol=1e-13)
        np.testing.assert_allclose(got.var_x, var_x, rtol=0, atol=1e-13)
        np.testing.assert_allclose(got.var_y, var_y, rtol=0, atol=1e-13)
        np.testing.assert_allclose(got.corr, corr, rtol=0, atol=1e-12)

    def test_with_heavy_ties(self):
        g = np.random.Generator(np.random.Philox(np.random.SeedSequence(42)))
        xp = DistanceRankPair.from_data(DataMatrix(g.integers(0, 3, (1, 8)).astype(float)))
        yp = DistanceRankPair.from_data(DataMatrix(g.integers(0, 3, (1, 8)).astype(float)))
        got = local_corr_map(xp, yp)
        cov, var_x, var_y, corr = local_map_oracle(xp.dist, yp.dist, got.eps_guard)
        np.testing.assert_allclose(got.cov, cov, rtol=0, atol=1e-13)
        np.testing.assert_allclose(got.corr, corr, rtol=0, atol=1e-12)


class TestNaiveRoute:
    def test_fast_matches_naive_at_n20(self):
        xp, yp = gaussian_pairs(20, p=2, q=2, seed=3)
        fast = local_corr_map(xp, yp)
        slow = local_map_naive(xp, yp)
        np.testing.assert_allclose(fast.cov, slow.cov, rtol=1e-9, atol=1e-15)
        np.testing.assert_allclose(fast.corr, slow.corr, rtol=1e-9, atol=1e-12)

    def test_refuses_large_n(self):
        xp, yp = gaussian_pairs(NAIVE_MAX_N + 1, seed=4)
        with pytest.raises(ParameterError):
            local_map_naive(xp, yp)


class TestValidation:
    def test_mismatched_sizes(self):
        xp, _ = gaussian_pairs(8, seed=0)
        _, yp = gaussian_pairs(9, seed=1)
        with pytest.raises(DimensionMismatchError):
            local_corr_map(xp, yp)

    def test_rejects_non_positive_guard(self):
        xp, yp = gaussian_pairs(8, seed=2)
        with pytest.raises(ParameterError):
            local_corr_map(xp, yp, eps_guard=0.0)

    def test_default_guard_scales_with_variance(self):
        assert default_eps_guard(0.0, 0.0) == pytest.approx(1e-12, rel=1e-6)
        assert default_eps_guard(1e6, 0.0) > 1e-7


class TestDegenerateData:
    def test_constant_sample_yields_zero_map(self):
        const = DataMatrix(np.zeros((1, 10)))
        xp = DistanceRankPair.from_data(const)
        _, yp = gaussian_pairs(10, seed=5)
        m = local_corr_map(xp, yp)
        np.testing.assert_array_equal(m.corr, np.zeros((10, 10)))
        np.testing.assert_array_equal(m.var_x, np.zeros(10))


class TestExactSymmetries:
    def test_swapping_samples_transposes_bitwise(self):
        xp, yp = gaussian_pairs(21, p=2, q=1, seed=6)
        ab = local_corr_map(xp, yp)
        ba = local_corr_map(yp, xp)
        np.testing.assert_array_equal(ba.corr, ab.corr.T)
        np.testing.assert_array_equal(ba.cov, ab.cov.T)
        np.testing.assert_array_equal(ba.var_x, ab.var_y)

    def test_swap_is_exact_on_symmetric_histogram(self):
        # Duplicated observations can make the rank-bucketed covariance
        # histogram exactly symmetric, where neither prefix-sum orientation
        # is canonical; the symmetrized prefix keeps the swap exact.
        x = DataMatrix(np.array([[0.0, 0.0, 0.0, 0.0, 1.0, -1.0]]))
        y = DataMatrix(np.array([[0.0, 0.0, 0.0, -1.0, 0.0, 1.0]]))
        xp = DistanceRankPair.from_data(x)
        yp = DistanceRankPair.from_data(y)
        ab = local_corr_map(xp, yp)
        ba = local_corr_map(yp, xp)
        np.testing.assert_array_equal(ba.corr, ab.corr.T)
        np.testing.assert_array_equal(ba.cov, ab.cov.T)
        np.testing.assert_array_equal(ba.var_x, ab.var_y)

    def test_joint_relabeling_is_bitwise_invariant(self):
        xp, yp = gaussian_pairs(19, p=3, q=1, seed=7)
        base = local_corr_map(xp, yp)
        g = np.random.Generator(np.random.Philox(np.random.SeedSequence(70)))
        for _ in range(3):
            perm = g.permutation(19)
            relabeled = local_corr_map(xp.permuted(perm), yp.permuted(perm))
            np.testing.assert_array_equal(relabeled.corr, base.corr)
            np.testing.assert_array_equal(relabeled.cov, base.cov)

    def test_variance_scaling_law(self):
        # var(u * QX + v) = u^2 * var(X) for any rotation Q and shift v.
        x = gaussian_matrix(24, p=2, seed=8)
        theta = 0.7
        rot = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
        u, v = -2.5, np.array([[1.0], [-3.0]])
        moved = DataMatrix(u * (rot @ x.values) + v)
        base = local_corr_map(*(DistanceRankPair.from_data(x),) * 2)
        scaled = local_corr_map(*(DistanceRankPair.from_data(moved),) * 2)
        np.testing.assert_allclose(scaled.var_x, u * u * base.var_x, rtol=1e-9)

    def test_diagonal_bounded_on_tie_free_data(self):
        xp, yp = gaussian_pairs(30, seed=9)
        m = local_corr_map(xp, yp)
        assert np.all(np.abs(np.diag(m.corr)) <= 1.0 + 1e-9)

    def test_isometry_diagonal_is_one(self):
        x = gaussian_matrix(20, seed=10)
        y = DataMatrix(2.0 * x.values + 1.0)
        m = local_corr_map(DistanceRankPair.from_data(x), DistanceRankPair.from_data(y))
        np.testing.assert_allclose(np.diag(m.corr)[1:], np.ones(19), rtol=0, atol=1e-12)


class TestAccessors:
    def test_one_indexed_accessors(self):
        m = chain_map()
        assert m.corr_at(1, 2) == m.corr[0, 1]
        assert m.cov_at(3, 1) == m.cov[2, 0]
        assert m.n == 3

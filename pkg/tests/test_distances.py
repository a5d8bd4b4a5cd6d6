"""Distance, centering, rank, and relabeling behavior."""

import numpy as np
import pytest

from helpers import CHAIN_CENTERED, CHAIN_DIST, CHAIN_RANKS, chain_matrix, gaussian_matrix
from mgcorr.distances import (
    DataMatrix,
    DistanceRankPair,
    canonical_total,
    center_columns,
    compute_ranks,
    jitter_data,
    pairwise_distances,
)
from mgcorr.errors import DimensionMismatchError, InsufficientSampleError, InvalidDataError, ParameterError
from oracles import center_oracle, rank_oracle


class TestDataMatrix:
    def test_stores_float64_c_contiguous(self):
        m = DataMatrix(np.array([[1, 2, 3]], dtype=np.int32))
        assert m.values.dtype == np.float64
        assert m.values.flags.c_contiguous

    def test_shape_accessors(self):
        m = DataMatrix(np.zeros((2, 5)))
        assert (m.p, m.n) == (2, 5)

    def test_from_observations_transposes(self):
        rows = [[1.0, 10.0], [2.0, 20.0], [3.0, 30.0]]
        m = DataMatrix.from_observations(rows)
        assert (m.p, m.n) == (2, 3)
        np.testing.assert_array_equal(m.values, [[1.0, 2.0, 3.0], [10.0, 20.0, 30.0]])

    @pytest.mark.parametrize("bad", [np.zeros(3), np.zeros((2, 2, 2))])
    def test_rejects_wrong_ndim(self, bad):
        with pytest.raises(InvalidDataError):
            DataMatrix(bad)

    def test_rejects_empty(self):
        with pytest.raises(InvalidDataError):
            DataMatrix(np.zeros((0, 4)))

    @pytest.mark.parametrize("value", [np.nan, np.inf, -np.inf])
    def test_rejects_non_finite(self, value):
        with pytest.raises(InvalidDataError):
            DataMatrix(np.array([[1.0, value]]))


class TestPairwiseDistances:
    def test_chain_fixture(self):
        np.testing.assert_array_equal(pairwise_distances(chain_matrix()), CHAIN_DIST)

    def test_symmetry_and_zero_diagonal_exact(self):
        d = pairwise_distances(gaussian_matrix(40, p=3, seed=5))
        np.testing.assert_array_equal(d, d.T)
        np.testing.assert_array_equal(np.diag(d), np.zeros(40))

    def test_triangle_inequality(self):
        d = pairwise_distances(gaussian_matrix(25, p=2, seed=9))
        lhs = d[:, :, None]
        rhs = d[:, None, :] + d[None, :, :]
        assert np.all(lhs <= rhs + 1e-12 * (1.0 + rhs))

    def test_column_relabeling_is_bitwise(self):
        # Layout canonicalization: selecting columns produces a non-contiguous
        # copy, which must not change a single distance bit.
        x = gaussian_matrix(31, p=3, seed=13)
        g = np.random.Generator(np.random.Philox(np.random.SeedSequence(99)))
        for _ in range(5):
            perm = g.permutation(x.n)
            direct = pairwise_distances(DataMatrix(x.values[:, perm]))
            relabeled = pairwise_distances(x)[np.ix_(perm, perm)]
            np.testing.assert_array_equal(direct, relabeled)


class TestCanonicalTotal:
    def test_matches_fsum_on_shuffles(self):
        g = np.random.Generator(np.random.Philox(np.random.SeedSequence(3)))
        values = g.standard_normal((8, 8)) * 10.0 ** g.integers(-3, 4, (8, 8))
        reference = canonical_total(values)
        for _ in range(20):
            shuffled = g.permutation(values.ravel()).reshape(8, 8)
            assert canonical_total(shuffled) == reference


class TestCenterColumns:
    def test_chain_fixture(self):
        np.testing.assert_array_equal(center_columns(CHAIN_DIST), CHAIN_CENTERED)

    def test_matches_pure_python_oracle(self):
        d = pairwise_distances(gaussian_matrix(17, p=2, seed=21))
        got = center_columns(d)
        want = np.array(center_oracle(d))
        np.testing.assert_allclose(got, want, rtol=0, atol=1e-12)

    def test_zero_diagonal_exact(self):
        d = pairwise_distances(gaussian_matrix(12, seed=2))
        np.testing.assert_array_equal(np.diag(center_columns(d)), np.zeros(12))

    def test_single_observation_rejected(self):
        with pytest.raises(InsufficientSampleError):
            center_columns(np.zeros((1, 1)))


class TestComputeRanks:
    def test_chain_fixture(self):
        np.testing.assert_array_equal(compute_ranks(CHAIN_DIST), CHAIN_RANKS)

    def test_matches_counting_oracle_with_ties(self):
        g = np.random.Generator(np.random.Philox(np.random.SeedSequence(7)))
        x = DataMatrix(g.integers(-3, 4, (1, 14)).astype(float))  # many ties
        d = pairwise_distances(x)
        np.testing.assert_array_equal(compute_ranks(d), np.array(rank_oracle(d)))

    def test_self_distance_has_rank_one(self):
        d = pairwise_distances(gaussian_matrix(10, seed=4))
        assert np.all(np.diag(compute_ranks(d)) == 1)

    def test_integer_dtype(self):
        assert compute_ranks(CHAIN_DIST).dtype == np.int64


class TestDistanceRankPair:
    def test_from_data_consistency(self):
        x = gaussian_matrix(15, p=2, seed=8)
        pair = DistanceRankPair.from_data(x)
        np.testing.assert_array_equal(pair.dist, pairwise_distances(x))
        np.testing.assert_array_equal(pair.centered, center_columns(pair.dist))
        np.testing.assert_array_equal(pair.ranks, compute_ranks(pair.dist))

    def test_permuted_matches_recomputation_bitwise(self):
        # The relabeled structures must be indistinguishable from recomputing
        # on relabeled raw data, bit for bit, including p > 1.
        for p, seed in [(1, 31), (3, 32)]:
            x = gaussian_matrix(23, p=p, seed=seed)
            pair = DistanceRankPair.from_data(x)
            g = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed + 100)))
            perm = g.permutation(x.n)
            via_pair = pair.permuted(perm)
            direct = DistanceRankPair.from_data(DataMatrix(x.values[:, perm]))
            np.testing.assert_array_equal(via_pair.dist, direct.dist)
            np.testing.assert_array_equal(via_pair.centered, direct.centered)
            np.testing.assert_array_equal(via_pair.ranks, direct.ranks)

    def test_permuted_round_trip(self):
        x = gaussian_matrix(12, seed=6)
        pair = DistanceRankPair.from_data(x)
        perm = np.roll(np.arange(12), 5)
        back = pair.permuted(perm).permuted(np.argsort(perm))
        np.testing.assert_array_equal(back.dist, pair.dist)

    def test_permuted_rejects_wrong_length(self):
        pair = DistanceRankPair.from_data(gaussian_matrix(6, seed=1))
        with pytest.raises(DimensionMismatchError):
            pair.permuted(np.arange(5))


class TestJitter:
    def test_deterministic_given_stream(self):
        x = gaussian_matrix(9, p=2, seed=3)
        a = jitter_data(x, np.random.Generator(np.random.Philox(np.random.SeedSequence(5))))
        b = jitter_data(x, np.random.Generator(np.random.Philox(np.random.SeedSequence(5))))
        np.testing.assert_array_equal(a.values, b.values)
        assert not np.array_equal(a.values, x.values)

    def test_small_perturbation(self):
        x = gaussian_matrix(50, seed=12)
        g = np.random.Generator(np.random.Philox(np.random.SeedSequence(0)))
        shifted = jitter_data(x, g, variance=1e-6)
        assert np.max(np.abs(shifted.values - x.values)) < 0.01

    def test_rejects_bad_variance(self):
        x = gaussian_matrix(5, seed=0)
        g = np.random.Generator(np.random.Philox(np.random.SeedSequence(0)))
        with pytest.raises(ParameterError):
            jitter_data(x, g, variance=0.0)

"""Shared fixtures-in-code for the test suite."""

from __future__ import annotations

import numpy as np

from mgcorr.distances import DataMatrix, DistanceRankPair

#: Three collinear points with distinct gaps; every local quantity is
#: hand-computable (see test_localmap for the worked values).
CHAIN = (0.0, 1.0, 3.0)

CHAIN_DIST = np.array([[0.0, 1.0, 3.0], [1.0, 0.0, 2.0], [3.0, 2.0, 0.0]])
CHAIN_CENTERED = np.array([[0.0, -0.5, 0.5], [-1.0, 0.0, -0.5], [1.0, 0.5, 0.0]])
CHAIN_RANKS = np.array([[1, 2, 3], [2, 1, 2], [3, 3, 1]])


def chain_matrix() -> DataMatrix:
    return DataMatrix(np.array([CHAIN]))


def gaussian_matrix(n: int, p: int = 1, seed: int = 0) -> DataMatrix:
    g = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    return DataMatrix(g.standard_normal((p, n)))


def gaussian_pairs(n: int, p: int = 1, q: int = 1, seed: int = 0):
    """Independent tie-free samples as DistanceRankPair structures."""
    x = gaussian_matrix(n, p, seed=seed)
    y = gaussian_matrix(n, q, seed=seed + 10_000)
    return DistanceRankPair.from_data(x), DistanceRankPair.from_data(y)

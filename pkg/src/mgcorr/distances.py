"""Sample containers, Euclidean distance matrices, column centering, and ranks.

Observations are columns: a ``DataMatrix`` holds a (p, n) array for n
observations in R^p. Everything downstream (centered matrices, rank matrices)
is built here so the statistic modules never touch raw coordinates.

Two conventions matter for exact reproducibility and are used throughout:

* distances are computed from coordinate differences directly, which makes the
  matrix symmetric with a zero diagonal *exactly* (IEEE negation and squaring
  commute), and
* every sum whose term order could depend on observation labeling is taken in
  value-sorted order (``canonical_total``), so permuting the observations of
  both samples identically reproduces results bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .errors import (
    DimensionMismatchError,
    InsufficientSampleError,
    InvalidDataError,
    ParameterError,
)

__all__ = [
    "DataMatrix",
    "DistanceRankPair",
    "canonical_total",
    "center_columns",
    "compute_ranks",
    "jitter_data",
    "pairwise_distances",
]


def canonical_total(values: np.ndarray) -> float:
    """Sum of all entries, accumulated in ascending value order.

    The result depends only on the multiset of entries, never on their
    arrangement, which is what makes relabeling invariance exact downstream.
    """
    return float(np.sort(values, axis=None).sum())


@dataclass(frozen=True)
class DataMatrix:
    """A sample of n observations in R^p, stored as a (p, n) array."""

    values: np.ndarray

    def __post_init__(self):
        # C-contiguous float64, always: reduction order inside einsum depends
        # on operand memory layout, so a canonical layout is required for
        # column selections like values[:, perm] (which produce non-contiguous
        # copies) to yield bit-identical distances after relabeling.
        arr = np.ascontiguousarray(self.values, dtype=np.float64)
        if arr.ndim != 2:
            raise InvalidDataError(f"expected a 2-D (p, n) array, got ndim={arr.ndim}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise InvalidDataError(f"empty data matrix with shape {arr.shape}")
        if not np.isfinite(arr).all():
            raise InvalidDataError("data contains NaN or infinite entries")
        object.__setattr__(self, "values", arr)

    @classmethod
    def from_observations(cls, rows) -> "DataMatrix":
        """Build from an (n, p) row-per-observation array (e.g. CSV rows)."""
        arr = np.atleast_2d(np.asarray(rows, dtype=np.float64))
        return cls(arr.T.copy())

    @property
    def n(self) -> int:
        return self.values.shape[1]

    @property
    def p(self) -> int:
        return self.values.shape[0]


def pairwise_distances(data: DataMatrix) -> np.ndarray:
    """(n, n) Euclidean distance matrix; exactly symmetric, zero diagonal."""
    x = data.values
    diff = x[:, :, None] - x[:, None, :]
    d = np.sqrt(np.einsum("dij,dij->ij", diff, diff))
    return d


def center_columns(dist: np.ndarray) -> np.ndarray:
    """Column-center a distance matrix.

    Off-diagonal entries have the column mean (sum over all n entries divided
    by n - 1) removed; the diagonal is set to zero. Column sums of the result
    are zero by construction. Column sums are taken in sorted order so the
    output is exactly equivariant under relabeling.
    """
    n = dist.shape[0]
    if n < 2:
        raise InsufficientSampleError("centering needs at least 2 observations")
    col_totals = np.sort(dist, axis=0).sum(axis=0)
    centered = dist - col_totals[None, :] / (n - 1)
    np.fill_diagonal(centered, 0.0)
    return centered


def compute_ranks(dist: np.ndarray) -> np.ndarray:
    """Within-column minimal ranks of a distance matrix.

    Entry (i, j) is k when x_i is the k-th nearest neighbor of x_j; ties share
    the smallest rank of the tie group, and the zero self-distance makes the
    diagonal rank 1 (duplicates of x_j share that rank 1).
    """
    return rankdata(dist, method="min", axis=0).astype(np.int64)


@dataclass(frozen=True)
class DistanceRankPair:
    """Distance matrix with its centered and rank companions for one sample."""

    dist: np.ndarray
    centered: np.ndarray
    ranks: np.ndarray

    @classmethod
    def from_data(cls, data: DataMatrix) -> "DistanceRankPair":
        d = pairwise_distances(data)
        return cls(dist=d, centered=center_columns(d), ranks=compute_ranks(d))

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    def permuted(self, perm: np.ndarray) -> "DistanceRankPair":
        """Structures for the relabeled sample x -> x[perm].

        Exactly equal to recomputing from permuted data: distances, centering
        and minimal ranks are all relabeling-equivariant.
        """
        perm = np.asarray(perm)
        if perm.shape != (self.n,):
            raise DimensionMismatchError(
                f"permutation length {perm.shape} does not match n={self.n}"
            )
        ix = np.ix_(perm, perm)
        return DistanceRankPair(
            dist=self.dist[ix], centered=self.centered[ix], ranks=self.ranks[ix]
        )


def jitter_data(data: DataMatrix, rng: np.random.Generator, variance: float = 0.01) -> DataMatrix:
    """Additive Gaussian jitter to break ties in discrete data (optional pre-step)."""
    if variance <= 0:
        raise ParameterError(f"jitter variance must be positive, got {variance}")
    noise = rng.normal(0.0, np.sqrt(variance), size=data.values.shape)
    return DataMatrix(data.values + noise)

"""Global-scale baseline statistics: distance correlation, Mantel, Pearson.

The global distance correlation is literally the (n, n) cell of the local
correlation map (same code path), so it inherits every exactness property of
the map. Mantel works on raw (uncentered) distances. Pearson is 1-D only and
ships with its two-sided t-test p-value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import betainc

from .distances import DataMatrix, DistanceRankPair, canonical_total
from .errors import (
    DegenerateDataError,
    DimensionMismatchError,
    InsufficientSampleError,
    UnsupportedDimensionError,
)
from .localmap import local_corr_map

__all__ = [
    "ScalarStatistic",
    "dcorr_from_pairs",
    "dcorr_global",
    "mantel",
    "mantel_from_pairs",
    "pearson",
]


@dataclass(frozen=True)
class ScalarStatistic:
    """A named scalar statistic, optionally with an analytic p-value."""

    value: float
    name: str
    p_value: float | None = None


def dcorr_from_pairs(x_pair: DistanceRankPair, y_pair: DistanceRankPair) -> float:
    """Global distance correlation: the full-scale cell of the local map."""
    return float(local_corr_map(x_pair, y_pair).corr[-1, -1])


def dcorr_global(x: DataMatrix, y: DataMatrix) -> ScalarStatistic:
    """Global (unbiased-style) distance correlation of two samples."""
    value = dcorr_from_pairs(DistanceRankPair.from_data(x), DistanceRankPair.from_data(y))
    return ScalarStatistic(value=value, name="dcorr")


def _mantel_cov(dist_a: np.ndarray, dist_b: np.ndarray) -> float:
    n = dist_a.shape[0]
    denom = float(n * (n - 1))
    first = canonical_total(dist_a * dist_b) / denom
    return first - (canonical_total(dist_a) / denom) * (canonical_total(dist_b) / denom)


def mantel_from_pairs(x_pair: DistanceRankPair, y_pair: DistanceRankPair) -> float:
    """Mantel coefficient from raw distance matrices (no centering)."""
    if x_pair.n != y_pair.n:
        raise DimensionMismatchError(f"sample sizes differ: {x_pair.n} vs {y_pair.n}")
    if x_pair.n < 2:
        raise InsufficientSampleError("Mantel needs at least 2 observations")
    self_x = _mantel_cov(x_pair.dist, x_pair.dist)
    self_y = _mantel_cov(y_pair.dist, y_pair.dist)
    if self_x <= 0 or self_y <= 0:
        raise DegenerateDataError("constant sample: Mantel normalization vanishes")
    return _mantel_cov(x_pair.dist, y_pair.dist) / np.sqrt(self_x * self_y)


def mantel(x: DataMatrix, y: DataMatrix) -> ScalarStatistic:
    """Mantel coefficient of two samples (two-sided use: permute |statistic|)."""
    value = mantel_from_pairs(DistanceRankPair.from_data(x), DistanceRankPair.from_data(y))
    return ScalarStatistic(value=value, name="mantel")


def pearson(x: DataMatrix, y: DataMatrix) -> ScalarStatistic:
    """Pearson product-moment correlation with its two-sided t-test p-value.

    Only defined for 1-D samples; the p-value comes from the identity
    p = I_{1 - r^2}((n - 2) / 2, 1 / 2) with I the regularized incomplete
    beta function (the Student-t two-sided tail with n - 2 degrees of freedom).
    """
    if x.p != 1 or y.p != 1:
        raise UnsupportedDimensionError(
            f"Pearson correlation is 1-D only, got p={x.p}, q={y.p}"
        )
    if x.n != y.n:
        raise DimensionMismatchError(f"sample sizes differ: {x.n} vs {y.n}")
    n = x.n
    if n < 3:
        raise InsufficientSampleError("Pearson t-test needs at least 3 observations")
    xv = x.values[0]
    yv = y.values[0]
    dx = xv - xv.mean()
    dy = yv - yv.mean()
    ssx = float(dx @ dx)
    ssy = float(dy @ dy)
    if ssx <= 0 or ssy <= 0:
        raise DegenerateDataError("constant sample: Pearson correlation undefined")
    r = float(dx @ dy) / np.sqrt(ssx * ssy)
    r = min(1.0, max(-1.0, r))
    p_value = float(betainc((n - 2) / 2.0, 0.5, 1.0 - r * r))
    p_value = max(p_value, np.finfo(np.float64).tiny)
    return ScalarStatistic(value=r, name="pearson", p_value=p_value)

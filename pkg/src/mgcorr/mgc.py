"""The multiscale graph correlation statistic.

Given the all-scales local correlation map, the test statistic is a smoothed
maximum: threshold the map at max(tau_n, corr[n, n]), keep the largest
connected region(s) of surviving scales, and if that region is big enough
(>= 2n cells) report its maximum; otherwise fall back to the global-scale
correlation corr[n, n]. The sample size threshold

    tau_n = 2 * F^{-1}(1 - 0.02 / n) - 1

uses the quantile of a symmetric Beta law with both shapes (v - 1) / 2 for
v = n(n - 3) / 2, the null distribution scale of the global statistic.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import ndimage
from scipy.special import betaincinv

from .distances import DataMatrix, DistanceRankPair
from .errors import ParameterError
from .localmap import LocalCorrMap, local_corr_map

__all__ = [
    "MgcResult",
    "beta_symmetric_quantile",
    "label_regions",
    "mgc_from_pairs",
    "mgc_statistic",
    "mgc_test_statistic",
    "threshold_tau",
]

_STRUCTURES = {
    4: np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool),
    8: np.ones((3, 3), dtype=bool),
}


@dataclass(frozen=True)
class MgcResult:
    """Smoothed-maximum statistic with the scale and region that produced it."""

    statistic: float
    optimal_scale: tuple[int, int]
    threshold: float
    region_size: int
    used_fallback: bool
    map: LocalCorrMap


def beta_symmetric_quantile(shape: float, prob: float) -> float:
    """Quantile of Beta(shape, shape): x with I_x(shape, shape) = prob (to 1e-10)."""
    if not shape > 0:
        raise ParameterError(f"beta shape must be positive, got {shape}")
    if not 0.0 < prob < 1.0:
        raise ParameterError(f"quantile probability must lie in (0, 1), got {prob}")
    return float(betaincinv(shape, shape, prob))


@lru_cache(maxsize=None)
def _tau_value(n: int) -> float:
    v = n * (n - 3) / 2.0
    shape = (v - 1.0) / 2.0
    return 2.0 * beta_symmetric_quantile(shape, 1.0 - 0.02 / n) - 1.0


def threshold_tau(n: int) -> float:
    """Map threshold tau_n; 0 (with a warning) below n = 4 where the law degenerates."""
    if n < 1:
        raise ParameterError(f"sample size must be positive, got {n}")
    if n < 4:
        warnings.warn(
            f"threshold is undefined for n={n} < 4; using tau=0",
            RuntimeWarning,
            stacklevel=2,
        )
        return 0.0
    return _tau_value(n)


def label_regions(mask: np.ndarray, connectivity: int = 8) -> tuple[np.ndarray, int]:
    """Label connected True-regions of a 2-D mask (4- or 8-neighbor adjacency)."""
    if connectivity not in _STRUCTURES:
        raise ParameterError(f"connectivity must be 4 or 8, got {connectivity}")
    labels, count = ndimage.label(mask, structure=_STRUCTURES[connectivity])
    return labels, int(count)


def mgc_statistic(corr_map: LocalCorrMap, tau: float, connectivity: int = 8) -> MgcResult:
    """Smoothed maximum of a local correlation map above threshold tau.

    The mask keeps scales with corr > max(tau, corr[n, n]); the candidate
    region is the union of all largest connected components. The maximum over
    that region is returned only when the region spans at least 2n scales and
    the maximum improves on corr[n, n]; otherwise the global scale (n, n) is
    the answer. Ties at the maximum resolve to the smallest k, then smallest l.
    """
    if tau < 0:
        raise ParameterError(f"tau must be non-negative, got {tau}")
    n = corr_map.n
    corr = corr_map.corr
    corr_nn = float(corr[-1, -1])

    mask = corr > max(tau, corr_nn)
    labels, count = label_regions(mask, connectivity)

    statistic = corr_nn
    scale = (n, n)
    used_fallback = True
    region_size = 0

    if count:
        sizes = np.bincount(labels.ravel())[1:]
        largest = 1 + np.flatnonzero(sizes == sizes.max())
        region = np.isin(labels, largest)
        region_size = int(region.sum())
        if region_size >= 2 * n:
            region_max = float(corr[region].max())
            if region_max > corr_nn:
                cells = np.argwhere(region & (corr == region_max))
                statistic = region_max
                scale = (int(cells[0, 0]) + 1, int(cells[0, 1]) + 1)
                used_fallback = False

    if statistic > 1.0:
        warnings.warn(
            f"statistic {statistic} exceeds 1 (small-sample rank effects); reported unclamped",
            RuntimeWarning,
            stacklevel=2,
        )
    return MgcResult(
        statistic=statistic,
        optimal_scale=scale,
        threshold=float(tau),
        region_size=region_size,
        used_fallback=used_fallback,
        map=corr_map,
    )


def mgc_from_pairs(
    x_pair: DistanceRankPair,
    y_pair: DistanceRankPair,
    eps_guard: float | None = None,
    connectivity: int = 8,
) -> MgcResult:
    """MGC statistic from precomputed distance/rank structures."""
    corr_map = local_corr_map(x_pair, y_pair, eps_guard=eps_guard)
    return mgc_statistic(corr_map, threshold_tau(x_pair.n), connectivity=connectivity)


def mgc_test_statistic(
    x: DataMatrix,
    y: DataMatrix,
    eps_guard: float | None = None,
    connectivity: int = 8,
) -> MgcResult:
    """MGC statistic of two samples (columns are observations)."""
    return mgc_from_pairs(
        DistanceRankPair.from_data(x),
        DistanceRankPair.from_data(y),
        eps_guard=eps_guard,
        connectivity=connectivity,
    )

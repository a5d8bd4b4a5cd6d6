"""Local distance-correlation maps over all neighborhood scales.

For centered distance matrices A, B and rank matrices R^A, R^B, the truncated
matrices A^k_ij = A_ij * 1(R^A_ij <= k) define, with E() the mean over the
n(n-1) off-diagonal entries,

    cov[k, l]  = E(A^k o B^l')  - E(A^k) E(B^l)        (o = entrywise, ' = transpose)
    var_x[k]   = E(A^k o A^k')  - E(A^k)^2
    corr[k, l] = cov[k, l] / sqrt(var_x[k] * var_y[l])  (0 when a variance is
                                                         below the eps guard)

All n^2 scales are produced in O(n^2) by histogramming entries over rank
coordinates and taking prefix sums:

* a 2-D histogram over (R^A_ij, R^B_ji) weighted by A_ij * B_ji gives every
  cov numerator after a 2-D prefix sum;
* 1-D histograms over R^A_ij weighted by A_ij give every truncated mean;
* a 1-D histogram over max(R^A_ij, R^A_ji) weighted by A_ij * A_ji gives every
  variance numerator (the two rank conditions collapse to one on the max).

Histogram buckets are accumulated in value-sorted order and the 2-D prefix is
computed on a byte-order-canonical orientation, which makes the map bitwise
invariant under relabeling of the observations and under swapping the two
samples (corr(Y,X) is exactly the transpose of corr(X,Y)).

``local_map_naive`` is an independent O(n^4) reference that evaluates the
definitions scale by scale and cross-checks the covariance against the trace
identity n(n-1) cov[k,l] = tr(A^k B^l) - tr(A^k J) tr(B^l J) / (n(n-1)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distances import DistanceRankPair
from .errors import DimensionMismatchError, ParameterError

__all__ = [
    "LocalCorrMap",
    "default_eps_guard",
    "local_corr_map",
    "local_map_naive",
]

NAIVE_MAX_N = 64


def default_eps_guard(var_x_full: float, var_y_full: float) -> float:
    """Degeneracy guard scaled to the full-scale variances (floor 1e-12)."""
    scale = max(abs(var_x_full), abs(var_y_full))
    return max(1e-12, 1e-12 * (1.0 + scale))


@dataclass(frozen=True)
class LocalCorrMap:
    """All-scales local distance covariances/correlations for one sample pair.

    Arrays are indexed [k-1, l-1] for neighborhood sizes (k, l) in [1, n]^2;
    ``corr_at`` / ``cov_at`` accept the 1-indexed scales used in reports.
    """

    cov: np.ndarray
    var_x: np.ndarray
    var_y: np.ndarray
    corr: np.ndarray
    n: int
    eps_guard: float

    def corr_at(self, k: int, l: int) -> float:
        return float(self.corr[k - 1, l - 1])

    def cov_at(self, k: int, l: int) -> float:
        return float(self.cov[k - 1, l - 1])


def _bucket_sums(buckets: np.ndarray, weights: np.ndarray, size: int) -> np.ndarray:
    """Per-bucket sums with terms accumulated in ascending weight order.

    The result is a function of each bucket's weight multiset only, never of
    the order the (bucket, weight) pairs arrive in.
    """
    order = np.lexsort((weights, buckets))
    b = buckets[order]
    w = weights[order]
    out = np.zeros(size)
    starts = np.flatnonzero(np.r_[True, b[1:] != b[:-1]])
    out[b[starts]] = np.add.reduceat(w, starts)
    return out


def _prefix2_canonical(hist: np.ndarray) -> np.ndarray:
    """2-D prefix sums computed on a transpose-canonical orientation.

    Guarantees prefix(hist.T) == prefix(hist).T bitwise, which is what makes
    swapping the two samples an exact transpose of the map. When the histogram
    is byte-for-byte symmetric (possible with duplicated observations) neither
    orientation is distinguished and the cumulative sums themselves need not
    transpose exactly, so the result is symmetrized cell by cell; both
    candidates round the same exact value, which is symmetric there.
    """
    ht = np.ascontiguousarray(hist.T)
    h_bytes, ht_bytes = hist.tobytes(), ht.tobytes()
    if h_bytes == ht_bytes:
        p = np.cumsum(np.cumsum(hist, axis=0), axis=1)
        return np.minimum(p, p.T)
    if h_bytes < ht_bytes:
        return np.cumsum(np.cumsum(hist, axis=0), axis=1)
    return np.ascontiguousarray(np.cumsum(np.cumsum(ht, axis=0), axis=1).T)


def _truncated_sums(centered: np.ndarray, ranks: np.ndarray, n: int) -> np.ndarray:
    """sums[k-1] = sum of A_ij over pairs with R_ij <= k (diagonal is zero)."""
    per_rank = _bucket_sums(ranks.ravel() - 1, centered.ravel(), n)
    return np.cumsum(per_rank)


def _local_variances(
    centered: np.ndarray, ranks: np.ndarray, trunc_sums: np.ndarray, denom: float
) -> np.ndarray:
    w = centered * centered.T
    max_rank = np.maximum(ranks, ranks.T)
    per_rank = _bucket_sums(max_rank.ravel() - 1, w.ravel(), ranks.shape[0])
    first = np.cumsum(per_rank) / denom
    means = trunc_sums / denom
    return first - means * means


def local_corr_map(
    x_pair: DistanceRankPair,
    y_pair: DistanceRankPair,
    eps_guard: float | None = None,
) -> LocalCorrMap:
    """Local distance-correlation map at every scale (k, l), in O(n^2).

    Parameters
    ----------
    x_pair, y_pair : DistanceRankPair
        Precomputed centered-distance and rank structures for the two samples.
    eps_guard : float, optional
        Variance floor below which correlations are set to 0. Defaults to
        ``default_eps_guard`` of the full-scale variances.
    """
    n = x_pair.n
    if y_pair.n != n:
        raise DimensionMismatchError(f"sample sizes differ: {n} vs {y_pair.n}")
    if eps_guard is not None and not eps_guard > 0:
        raise ParameterError(f"eps_guard must be positive, got {eps_guard}")

    A, RA = x_pair.centered, x_pair.ranks
    B, RB = y_pair.centered, y_pair.ranks
    denom = float(n * (n - 1))

    w = A * B.T
    buckets = (RA.astype(np.int64) - 1) * n + (RB.T.astype(np.int64) - 1)
    hist = _bucket_sums(buckets.ravel(), w.ravel(), n * n).reshape(n, n)
    cross = _prefix2_canonical(hist)

    sums_a = _truncated_sums(A, RA, n)
    sums_b = _truncated_sums(B, RB, n)
    cov = cross / denom - np.outer(sums_a / denom, sums_b / denom)

    var_x = _local_variances(A, RA, sums_a, denom)
    var_y = _local_variances(B, RB, sums_b, denom)

    if eps_guard is None:
        eps_guard = default_eps_guard(var_x[-1], var_y[-1])

    valid = (var_x >= eps_guard)[:, None] & (var_y >= eps_guard)[None, :]
    scale = np.sqrt(np.where(valid, np.outer(var_x, var_y), 1.0))
    corr = np.divide(cov, scale, out=np.zeros_like(cov), where=valid)

    return LocalCorrMap(
        cov=cov, var_x=var_x, var_y=var_y, corr=corr, n=n, eps_guard=float(eps_guard)
    )


def local_map_naive(
    x_pair: DistanceRankPair,
    y_pair: DistanceRankPair,
    eps_guard: float | None = None,
    max_n: int = NAIVE_MAX_N,
    trace_rtol: float = 1e-9,
) -> LocalCorrMap:
    """O(n^4) reference map: per-scale double sums straight from the definitions.

    Refuses n > ``max_n``. Each covariance cell is cross-checked against the
    trace identity; disagreement beyond ``trace_rtol`` (relative to the cell
    magnitude) raises ArithmeticError.
    """
    n = x_pair.n
    if y_pair.n != n:
        raise DimensionMismatchError(f"sample sizes differ: {n} vs {y_pair.n}")
    if n > max_n:
        raise ParameterError(f"naive reference is bounded to n <= {max_n}, got {n}")
    if eps_guard is not None and not eps_guard > 0:
        raise ParameterError(f"eps_guard must be positive, got {eps_guard}")

    A, RA = x_pair.centered, x_pair.ranks
    B, RB = y_pair.centered, y_pair.ranks
    denom = float(n * (n - 1))

    trunc_a = [A * (RA <= k) for k in range(1, n + 1)]
    trunc_b = [B * (RB <= l) for l in range(1, n + 1)]
    sums_a = np.array([t.sum() for t in trunc_a])
    sums_b = np.array([t.sum() for t in trunc_b])

    cov = np.empty((n, n))
    for k in range(n):
        Ak = trunc_a[k]
        for l in range(n):
            Bl = trunc_b[l]
            first = (Ak * Bl.T).sum() / denom
            cov[k, l] = first - (sums_a[k] / denom) * (sums_b[l] / denom)

            trace = np.trace(Ak @ Bl)
            identity = trace - sums_a[k] * sums_b[l] / denom
            tol = trace_rtol * max(1.0, abs(cov[k, l]) * denom)
            if abs(cov[k, l] * denom - identity) > tol:
                raise ArithmeticError(
                    f"trace identity violated at scale ({k + 1}, {l + 1}): "
                    f"{cov[k, l] * denom} vs {identity}"
                )

    var_x = np.array(
        [(trunc_a[k] * trunc_a[k].T).sum() / denom - (sums_a[k] / denom) ** 2 for k in range(n)]
    )
    var_y = np.array(
        [(trunc_b[l] * trunc_b[l].T).sum() / denom - (sums_b[l] / denom) ** 2 for l in range(n)]
    )

    if eps_guard is None:
        eps_guard = default_eps_guard(var_x[-1], var_y[-1])

    corr = np.zeros((n, n))
    for k in range(n):
        for l in range(n):
            if var_x[k] >= eps_guard and var_y[l] >= eps_guard:
                corr[k, l] = cov[k, l] / np.sqrt(var_x[k] * var_y[l])

    return LocalCorrMap(
        cov=cov, var_x=var_x, var_y=var_y, corr=corr, n=n, eps_guard=float(eps_guard)
    )

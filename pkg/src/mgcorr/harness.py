"""Desk-scale experiment harness: power estimation, statistic panels, timing.

Power is estimated the direct way rather than by nested permutation tests:
draw ``replicates`` dependent sample pairs and as many crossed null pairs
(same marginals, X and Y from independent draws), take the empirical
(1 - alpha) quantile of the null statistics as the critical value, and report
the fraction of dependent-draw statistics exceeding it.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .baselines import dcorr_global, mantel, pearson
from .distances import DataMatrix
from .errors import ParameterError
from .inference import RngSpec
from .mgc import mgc_test_statistic
from .simulations import SIMULATION_NAMES, SamplePair, SimSpec, null_counterpart, simulate

__all__ = [
    "DATA_STATISTICS",
    "PanelEntry",
    "PowerResult",
    "TimingEntry",
    "estimate_power",
    "runtime_bench",
    "statistic_panel",
]

DataStatistic = Callable[[DataMatrix, DataMatrix], float]

#: Method name -> statistic on raw samples. Two-sided statistics (Mantel,
#: Pearson) enter as absolute values so larger always means more dependence.
DATA_STATISTICS: dict[str, DataStatistic] = {
    "mgc": lambda x, y: mgc_test_statistic(x, y).statistic,
    "dcorr": lambda x, y: dcorr_global(x, y).value,
    "mantel": lambda x, y: abs(mantel(x, y).value),
    "pearson": lambda x, y: abs(pearson(x, y).value),
}

# spawn-key namespaces for the independent per-replicate draws
_ALT, _NULL_A, _NULL_B = 1, 2, 3


@dataclass(frozen=True)
class PowerResult:
    """Empirical power of one method on one simulation setting."""

    sim_type: str
    method: str
    n: int
    p: int
    alpha: float
    replicates: int
    power: float
    stderr: float


@dataclass(frozen=True)
class PanelEntry:
    """One simulation's statistics on a single noiseless draw."""

    sim_type: str
    mgc_stat: float
    dcorr_stat: float
    pearson_abs: float


@dataclass(frozen=True)
class TimingEntry:
    """Median wall-clock seconds for one statistic at one sample size."""

    n: int
    method: str
    seconds: float


def _method_statistic(method: str) -> DataStatistic:
    try:
        return DATA_STATISTICS[method]
    except KeyError:
        raise ParameterError(
            f"unknown method {method!r}; valid: " + ", ".join(DATA_STATISTICS)
        ) from None


def estimate_power(
    spec: SimSpec,
    method: str,
    alpha: float = 0.05,
    replicates: int = 1000,
    rng: RngSpec | None = None,
) -> PowerResult:
    """Monte-Carlo power of ``method`` against ``spec`` at level ``alpha``.

    Per replicate i, the dependent draw and the two independent draws behind
    its null counterpart use seeds derived purely from (rng.master_seed, i),
    so results do not depend on evaluation order.
    """
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"alpha must lie in (0, 1), got {alpha}")
    if replicates < 2:
        raise ParameterError(f"need at least 2 replicates, got {replicates}")
    if rng is None:
        rng = RngSpec(master_seed=0)
    stat = _method_statistic(method)

    alt_stats = np.empty(replicates)
    null_stats = np.empty(replicates)
    for i in range(replicates):
        dependent = simulate(replace(spec, seed=rng.child_seed(_ALT, i)))
        alt_stats[i] = stat(dependent.x, dependent.y)
        crossed = null_counterpart(
            replace(spec, seed=rng.child_seed(_NULL_A, i)), rng.child_seed(_NULL_B, i)
        )
        null_stats[i] = stat(crossed.x, crossed.y)

    critical = float(np.quantile(null_stats, 1.0 - alpha))
    power = float(np.mean(alt_stats > critical))
    stderr = float(np.sqrt(power * (1.0 - power) / replicates))
    return PowerResult(
        sim_type=spec.sim_type,
        method=method,
        n=spec.n,
        p=spec.p,
        alpha=alpha,
        replicates=replicates,
        power=power,
        stderr=stderr,
    )


def statistic_panel(n: int, rng: RngSpec | None = None, p: int = 1) -> list[PanelEntry]:
    """MGC, Dcorr and |Pearson| on one noiseless draw of every simulation."""
    if rng is None:
        rng = RngSpec(master_seed=0)
    entries = []
    for idx, name in enumerate(SIMULATION_NAMES):
        pair = simulate(SimSpec(name, n=n, p=p, kappa=0.0, seed=rng.child_seed(idx)))
        entries.append(
            PanelEntry(
                sim_type=name,
                mgc_stat=DATA_STATISTICS["mgc"](pair.x, pair.y),
                dcorr_stat=DATA_STATISTICS["dcorr"](pair.x, pair.y),
                pearson_abs=(
                    DATA_STATISTICS["pearson"](pair.x, pair.y)
                    if pair.x.p == 1 and pair.y.p == 1
                    else float("nan")
                ),
            )
        )
    return entries


def runtime_bench(
    n_values: Sequence[int],
    p: int = 1,
    rng: RngSpec | None = None,
    runs: int = 10,
    methods: Sequence[str] = ("mgc", "dcorr"),
) -> list[TimingEntry]:
    """Median wall-clock time of each statistic on quadratic-simulation data.

    Each (n, method) cell is the median over ``runs`` timed evaluations on
    fresh draws, after one untimed warmup.
    """
    if runs < 1:
        raise ParameterError(f"need at least 1 run, got {runs}")
    if rng is None:
        rng = RngSpec(master_seed=0)
    entries = []
    for n in n_values:
        draws: list[SamplePair] = [
            simulate(SimSpec("quadratic", n=int(n), p=p, kappa=1.0, seed=rng.child_seed(int(n), i)))
            for i in range(runs)
        ]
        for method in methods:
            stat = _method_statistic(method)
            stat(draws[0].x, draws[0].y)  # warmup
            elapsed = np.empty(runs)
            for i, pair in enumerate(draws):
                start = time.perf_counter()
                stat(pair.x, pair.y)
                elapsed[i] = time.perf_counter() - start
            entries.append(TimingEntry(n=int(n), method=method, seconds=float(np.median(elapsed))))
    return entries

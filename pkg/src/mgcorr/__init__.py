"""Multiscale graph correlation: local correlation maps, the MGC independence
test, baseline statistics, benchmark simulations, and a power harness."""

__version__ = "0.1.0"

from . import errors
from .baselines import ScalarStatistic, dcorr_from_pairs, dcorr_global, mantel, pearson
from .distances import (
    DataMatrix,
    DistanceRankPair,
    canonical_total,
    center_columns,
    compute_ranks,
    jitter_data,
    pairwise_distances,
)
from .harness import (
    DATA_STATISTICS,
    PanelEntry,
    PowerResult,
    TimingEntry,
    estimate_power,
    runtime_bench,
    statistic_panel,
)
from .inference import PAIR_STATISTICS, RngSpec, TestReport, permutation_test
from .localmap import LocalCorrMap, default_eps_guard, local_corr_map, local_map_naive
from .mgc import (
    MgcResult,
    beta_symmetric_quantile,
    label_regions,
    mgc_from_pairs,
    mgc_statistic,
    mgc_test_statistic,
    threshold_tau,
)
from .simulations import SIMULATION_NAMES, SamplePair, SimSpec, null_counterpart, simulate

__all__ = [
    "DATA_STATISTICS",
    "DataMatrix",
    "DistanceRankPair",
    "LocalCorrMap",
    "MgcResult",
    "PAIR_STATISTICS",
    "PanelEntry",
    "PowerResult",
    "RngSpec",
    "SIMULATION_NAMES",
    "SamplePair",
    "ScalarStatistic",
    "SimSpec",
    "TestReport",
    "TimingEntry",
    "__version__",
    "beta_symmetric_quantile",
    "canonical_total",
    "center_columns",
    "compute_ranks",
    "dcorr_from_pairs",
    "dcorr_global",
    "default_eps_guard",
    "errors",
    "estimate_power",
    "jitter_data",
    "label_regions",
    "local_corr_map",
    "local_map_naive",
    "mantel",
    "mgc_from_pairs",
    "mgc_statistic",
    "mgc_test_statistic",
    "null_counterpart",
    "pairwise_distances",
    "pearson",
    "permutation_test",
    "runtime_bench",
    "simulate",
    "statistic_panel",
    "threshold_tau",
]

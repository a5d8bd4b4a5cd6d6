"""Command-line interface.

Subcommands: ``test`` (independence test on CSV data), ``map`` (export the
local correlation map), ``simulate`` (draw a benchmark dataset), ``power``
(Monte-Carlo power), ``bench`` (statistic timings).

Exit codes: 0 success; 2 malformed input or unknown simulation/parameter;
3 sample-size mismatch between the two selections; 4 degenerate or
unsupported data (constant columns, multivariate input to Pearson, too few
observations).

CSV conventions: comma separator, decimal points, an optional single header
row (auto-detected), rows are observations. Lines starting with ``#`` are
ignored, which is how this tool embeds its version/config/seed into every
CSV it writes while keeping the files ingestible.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import __version__
from .baselines import mantel, pearson
from .distances import DataMatrix, DistanceRankPair, jitter_data
from .errors import (
    DegenerateDataError,
    DimensionMismatchError,
    InsufficientSampleError,
    InvalidDataError,
    MgcorrError,
    ParameterError,
    UnsupportedDimensionError,
)
from .harness import estimate_power, runtime_bench
from .inference import PAIR_STATISTICS, RngSpec, permutation_test
from .localmap import local_corr_map
from .mgc import mgc_test_statistic
from .simulations import SimSpec, simulate

__all__ = ["main", "read_map_csv"]

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_DIMENSION = 3
EXIT_DEGENERATE = 4

_JITTER_KEY = (97, 0)  # spawn-key namespace reserved for the jitter stream


# ---------------------------------------------------------------------------
# CSV I/O
# ---------------------------------------------------------------------------


def _read_csv(path: str) -> tuple[list[str] | None, np.ndarray]:
    """Read a CSV into (header or None, (n, width) float array)."""
    try:
        with open(path, newline="") as fh:
            raw = [row for row in csv.reader(fh) if row and not row[0].lstrip().startswith("#")]
    except OSError as exc:
        raise InvalidDataError(f"cannot read {path}: {exc}") from exc
    if not raw:
        raise InvalidDataError(f"{path} holds no data rows")

    def _try_floats(row: list[str]) -> list[float] | None:
        try:
            return [float(cell) for cell in row]
        except ValueError:
            return None

    header: list[str] | None = None
    body = raw
    if _try_floats(raw[0]) is None:
        header = [cell.strip() for cell in raw[0]]
        body = raw[1:]
    if not body:
        raise InvalidDataError(f"{path} holds a header but no data rows")

    width = len(body[0])
    parsed = []
    for idx, row in enumerate(body):
        if len(row) != width:
            raise InvalidDataError(f"{path}: row {idx + 1} has {len(row)} cells, expected {width}")
        values = _try_floats(row)
        if values is None:
            raise InvalidDataError(f"{path}: row {idx + 1} has a non-numeric cell")
        parsed.append(values)
    data = np.asarray(parsed, dtype=np.float64)
    if not np.isfinite(data).all():
        raise InvalidDataError(f"{path}: NaN or infinite values are not accepted")
    return header, data


def _resolve_columns(selector: str, header: list[str] | None, width: int) -> list[int]:
    parts = [part.strip() for part in selector.split(",") if part.strip()]
    if not parts:
        raise ParameterError(f"empty column selection {selector!r}")
    out = []
    for part in parts:
        try:
            idx = int(part)
        except ValueError:
            if header is None:
                raise ParameterError(
                    f"column {part!r} is not an index and the file has no header row"
                ) from None
            try:
                idx = header.index(part)
            except ValueError:
                raise ParameterError(f"column {part!r} not found in header {header}") from None
        if not 0 <= idx < width:
            raise ParameterError(f"column index {idx} outside 0..{width - 1}")
        out.append(idx)
    if len(set(out)) != len(out):
        raise ParameterError(f"column selection {selector!r} repeats a column")
    return out


def _comment_lines(config: dict) -> list[str]:
    return [
        f"# mgcorr {__version__}",
        "# config: " + json.dumps(config, sort_keys=True),
    ]


def _write_csv_rows(path: str | None, comments: list[str], header: list[str], rows) -> None:
    def _dump(fh):
        fh.write("\n".join(comments) + "\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)

    if path is None:
        _dump(sys.stdout)
    else:
        with open(path, "w", newline="") as fh:
            _dump(fh)


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def read_map_csv(path: str) -> np.ndarray:
    """Read back a correlation map written by the ``map`` subcommand."""
    _, data = _read_csv(path)
    return data[:, 1:]  # first column is the k index


def _write_json(path: str | None, payload: dict) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _load_xy(args) -> tuple[DataMatrix, DataMatrix]:
    header, data = _read_csv(args.input)
    width = data.shape[1]
    x_cols = _resolve_columns(args.x_cols, header, width)
    y_cols = _resolve_columns(args.y_cols, header, width)
    if set(x_cols) & set(y_cols):
        raise ParameterError("x and y column selections overlap")
    x = DataMatrix.from_observations(data[:, x_cols])
    y = DataMatrix.from_observations(data[:, y_cols])
    if args.jitter > 0:
        spec = RngSpec(master_seed=args.seed)
        x = jitter_data(x, spec.stream(*_JITTER_KEY, 0), variance=args.jitter)
        y = jitter_data(y, spec.stream(*_JITTER_KEY, 1), variance=args.jitter)
    return x, y


def _config_dict(args, fields: list[str]) -> dict:
    return {field: getattr(args, field) for field in fields}


def cmd_test(args) -> int:
    x, y = _load_xy(args)
    rng = RngSpec(master_seed=args.seed)
    config = _config_dict(
        args, ["command", "input", "x_cols", "y_cols", "method", "permutations", "seed", "jitter"]
    )

    threshold = None
    optimal_scale = None
    if args.method == "mgc":
        result = mgc_test_statistic(x, y)
        report = permutation_test(PAIR_STATISTICS["mgc"], x, y, r=args.permutations, rng=rng)
        statistic, p_value = report.statistic, report.p_value
        threshold = result.threshold
        optimal_scale = [result.optimal_scale[0], result.optimal_scale[1]]
        permutations = args.permutations
    elif args.method == "dcorr":
        report = permutation_test(PAIR_STATISTICS["dcorr"], x, y, r=args.permutations, rng=rng)
        statistic, p_value = report.statistic, report.p_value
        permutations = args.permutations
    elif args.method == "mantel":
        signed = mantel(x, y).value
        report = permutation_test(PAIR_STATISTICS["mantel"], x, y, r=args.permutations, rng=rng)
        statistic, p_value = signed, report.p_value
        permutations = args.permutations
    elif args.method == "pearson":
        stat = pearson(x, y)
        statistic, p_value = stat.value, stat.p_value
        permutations = 0  # analytic t-test, no resampling
    else:  # pragma: no cover - argparse restricts choices
        raise ParameterError(f"unknown method {args.method!r}")

    payload = {
        "version": __version__,
        "config": config,
        "method": args.method,
        "statistic": statistic,
        "p_value": p_value,
        "n": x.n,
        "p": x.p,
        "q": y.p,
        "r": permutations,
        "seed": args.seed,
        "threshold": threshold,
    }
    if optimal_scale is not None:
        payload["optimal_scale"] = optimal_scale
    _write_json(args.output, payload)
    return EXIT_OK


def cmd_map(args) -> int:
    x, y = _load_xy(args)
    if x.n != y.n:
        raise DimensionMismatchError(f"sample sizes differ: {x.n} vs {y.n}")
    corr_map = local_corr_map(DistanceRankPair.from_data(x), DistanceRankPair.from_data(y))
    n = corr_map.n
    config = _config_dict(args, ["command", "input", "x_cols", "y_cols", "seed", "jitter"])
    header = ["k\\l"] + [str(l) for l in range(1, n + 1)]
    rows = [[str(k + 1)] + [_fmt(v) for v in corr_map.corr[k]] for k in range(n)]
    _write_csv_rows(args.output, _comment_lines(config), header, rows)
    return EXIT_OK


def cmd_simulate(args) -> int:
    spec = SimSpec(sim_type=args.sim, n=args.n, p=args.p, kappa=args.kappa, seed=args.seed)
    pair = simulate(spec)
    config = _config_dict(args, ["command", "sim", "n", "p", "kappa", "seed"])
    header = [f"x{i + 1}" for i in range(pair.x.p)] + [f"y{i + 1}" for i in range(pair.y.p)]
    stacked = np.vstack([pair.x.values, pair.y.values]).T  # rows are observations
    rows = [[_fmt(v) for v in row] for row in stacked]
    _write_csv_rows(args.output, _comment_lines(config), header, rows)
    return EXIT_OK


def cmd_power(args) -> int:
    methods = [m.strip() for m in args.method.split(",") if m.strip()]
    n_values = [int(s) for s in str(args.n).split(",") if s.strip()]
    if not methods or not n_values:
        raise ParameterError("power needs at least one method and one n")
    rng = RngSpec(master_seed=args.seed)
    config = _config_dict(
        args,
        ["command", "sim", "method", "n", "p", "kappa", "alpha", "replicates", "seed"],
    )
    results = []
    for n in n_values:
        spec = SimSpec(sim_type=args.sim, n=n, p=args.p, kappa=args.kappa, seed=0)
        for method in methods:
            results.append(
                estimate_power(
                    spec, method, alpha=args.alpha, replicates=args.replicates, rng=rng
                )
            )
    header = ["sim_type", "method", "n", "p", "alpha", "replicates", "power", "stderr"]
    rows = [
        [r.sim_type, r.method, r.n, r.p, _fmt(r.alpha), r.replicates, _fmt(r.power), _fmt(r.stderr)]
        for r in results
    ]
    _write_csv_rows(args.output, _comment_lines(config), header, rows)
    if args.output is not None:
        summary = {
            "version": __version__,
            "config": config,
            "results": [
                {
                    "sim_type": r.sim_type,
                    "method": r.method,
                    "n": r.n,
                    "p": r.p,
                    "alpha": r.alpha,
                    "replicates": r.replicates,
                    "power": r.power,
                    "stderr": r.stderr,
                }
                for r in results
            ],
        }
        _write_json(args.output + ".summary.json", summary)
    return EXIT_OK


def cmd_bench(args) -> int:
    n_values = [int(s) for s in str(args.n).split(",") if s.strip()]
    if not n_values:
        raise ParameterError("bench needs at least one n")
    rng = RngSpec(master_seed=args.seed)
    entries = runtime_bench(n_values, p=args.p, rng=rng, runs=args.replicates)
    config = _config_dict(args, ["command", "n", "p", "replicates", "seed"])
    header = ["n", "method", "seconds"]
    rows = [[e.n, e.method, _fmt(e.seconds)] for e in entries]
    _write_csv_rows(args.output, _comment_lines(config), header, rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mgcorr",
        description="Multiscale graph correlation independence testing",
    )
    parser.add_argument("--version", action="version", version=f"mgcorr {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_data_flags(p):
        p.add_argument("--input", required=True, help="CSV file, rows are observations")
        p.add_argument("--x-cols", dest="x_cols", required=True, help="x columns (names or 0-based indices, comma-separated)")
        p.add_argument("--y-cols", dest="y_cols", required=True, help="y columns")
        p.add_argument("--jitter", type=float, default=0.0, help="variance of optional seeded tie-breaking jitter (0 = off)")

    t = sub.add_parser("test", help="independence test on CSV data")
    add_data_flags(t)
    t.add_argument("--method", choices=["mgc", "dcorr", "mantel", "pearson"], default="mgc")
    t.add_argument("--permutations", type=int, default=1000)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--output", default=None, help="JSON report path (stdout if omitted)")
    t.add_argument("--format", choices=["json"], default="json")
    t.set_defaults(func=cmd_test)

    m = sub.add_parser("map", help="export the local correlation map as CSV")
    add_data_flags(m)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--output", default=None)
    m.add_argument("--format", choices=["csv"], default="csv")
    m.set_defaults(func=cmd_map)

    s = sub.add_parser("simulate", help="draw a benchmark simulation as CSV")
    s.add_argument("--sim", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=int, default=1)
    s.add_argument("--kappa", type=float, default=1.0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--output", default=None)
    s.add_argument("--format", choices=["csv"], default="csv")
    s.set_defaults(func=cmd_simulate)

    w = sub.add_parser("power", help="Monte-Carlo power estimates")
    w.add_argument("--sim", required=True)
    w.add_argument("--method", default="mgc", help="comma-separated: mgc,dcorr,mantel,pearson")
    w.add_argument("--n", required=True, help="sample size(s), comma-separated")
    w.add_argument("--p", type=int, default=1)
    w.add_argument("--kappa", type=float, default=1.0)
    w.add_argument("--alpha", type=float, default=0.05)
    w.add_argument("--replicates", type=int, default=1000)
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--output", default=None)
    w.add_argument("--format", choices=["csv"], default="csv")
    w.set_defaults(func=cmd_power)

    b = sub.add_parser("bench", help="statistic runtime comparison")
    b.add_argument("--n", required=True, help="sample size(s), comma-separated")
    b.add_argument("--p", type=int, default=1)
    b.add_argument("--replicates", type=int, default=10, help="timed runs per cell")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--output", default=None)
    b.add_argument("--format", choices=["csv"], default="csv")
    b.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, matching our malformed-input code
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (DimensionMismatchError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except (DegenerateDataError, UnsupportedDimensionError, InsufficientSampleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (InvalidDataError, ParameterError, MgcorrError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())

"""Command-line surface: density tables, simulation, and validation runs.

Every subcommand emits a run report (embedded in JSON output, or as a
``.report.json`` sidecar next to CSV files, or on standard error when CSV
goes to standard out) carrying the seed, generator identity, parameters,
estimates, and comparison statistics needed to replay the run exactly.

Exit codes: 0 success, 1 validation failure, 2 usage or I/O error,
3 numerical (quadrature) failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from typing import Callable, Sequence

import numpy as np

from . import __version__, densities, kernels, sampling, validation
from .densities import QUADRATURE_RULE_ID, QuadratureConfig, QuadratureError
from .sampling import RandomSource

__all__ = ["build_parser", "main", "main_entry"]

EXIT_OK = 0
EXIT_VALIDATION_FAILURE = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _int_at_least(minimum: int) -> Callable[[str], int]:
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
        if value < minimum:
            raise argparse.ArgumentTypeError(
                f"must be at least {minimum}, got {value}")
        return value
    return parse


def _seed_type(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must lie in [0, 2^64)")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value > 0.0:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    except OSError as exc:
        raise _CliError(EXIT_USAGE, f"cannot write {path}: {exc}")


def _report_json(report: dict, started: float) -> str:
    report["wall_time_seconds"] = time.perf_counter() - started
    return json.dumps(report, indent=2) + "\n"


def _base_report(subcommand: str, seed: int, generator_id: str,
                 parameters: dict) -> dict:
    return {
        "tool_version": __version__,
        "subcommand": subcommand,
        "seed": seed,
        "generator_id": generator_id,
        "parameters": parameters,
        "estimates": [],
        "comparisons": [],
    }


def _emit_csv_with_report(args_out: str | None, csv_text: str, report: dict,
                          started: float) -> None:
    """CSV to --out with a sidecar report, or to stdout with the report on
    standard error."""
    if args_out:
        _write_text(args_out, csv_text)
        _write_text(args_out + ".report.json", _report_json(report, started))
    else:
        sys.stdout.write(csv_text)
        sys.stderr.write(_report_json(report, started))


def _quadrature_config(args) -> QuadratureConfig:
    if args.tol is None:
        return QuadratureConfig()
    return QuadratureConfig(abs_tol=args.tol, rel_tol=args.tol)


# --------------------------------------------------------------------------
# Subcommands


def cmd_density_table(args) -> int:
    started = time.perf_counter()
    config = _quadrature_config(args)
    table = densities.density_table(args.grid, config)
    trapezoid = validation.ComparisonReport.build(
        "density-table-trapezoid-error",
        abs(table.trapezoid_integral() - 1.0), 5e-3, args.grid)
    report = _base_report("density-table", 0, "none", {
        "grid": args.grid,
        "format": args.format,
        "abs_tol": config.abs_tol,
        "rel_tol": config.rel_tol,
        "max_subdivisions": config.max_subdivisions,
        "quadrature_rule": QUADRATURE_RULE_ID,
        "backend": kernels.backend_name(),
    })
    report["estimates"] = [{"name": "normalization_constant",
                            "value": float(table.c), "std_error": 0.0}]
    report["comparisons"] = [trapezoid.as_dict()]

    if args.format == "json":
        report["table"] = {
            "thetas": [float(t) for t in table.thetas],
            "values": [float(v) for v in table.values],
            "c": float(table.c),
        }
        text = _report_json(report, started)
        if args.out:
            _write_text(args.out, text)
        else:
            sys.stdout.write(text)
    else:
        rows = [f"{t:.17g},{v:.17g}"
                for t, v in zip(table.thetas, table.values)]
        csv_text = "theta,g\n" + "\n".join(rows) + "\n"
        _emit_csv_with_report(args.out, csv_text, report, started)
    return EXIT_OK


def cmd_simulate(args) -> int:
    started = time.perf_counter()
    rng = RandomSource(args.seed)
    crossed, thetas = sampling.sample_pair_statistics(rng.substream(0),
                                                      args.samples,
                                                      args.threads)
    hits = int(np.sum(crossed, dtype=np.int64))
    p = hits / args.samples
    std_error = math.sqrt(p * (1.0 - p) / args.samples)
    angles = thetas[crossed == 1]
    hist = sampling.histogram(angles, 0.0, math.pi, args.bins)
    expected = validation.bin_density_integrals(
        0.0, math.pi, args.bins, densities.angle_density_values)
    tv = validation.tv_distance(hist, densities.angle_density_values, 0.01,
                                "conditional-angle-tv")

    # --threads is deliberately not recorded: reports are byte-stable
    # across worker counts.
    report = _base_report("simulate", args.seed, rng.generator_id, {
        "samples": args.samples,
        "bins": args.bins,
        "quadrature_rule": QUADRATURE_RULE_ID,
        "backend": kernels.backend_name(),
    })
    report["estimates"] = [{"name": "p_intersect", "value": float(p),
                            "std_error": float(std_error)}]
    report["comparisons"] = [tv.as_dict()]
    report["histogram"] = {
        "lo": hist.lo,
        "hi": hist.hi,
        "bin_count": hist.bin_count,
        "counts": [int(c) for c in hist.counts],
        "total": hist.total,
        "empirical_mass": [float(m) for m in hist.empirical_mass()],
        "expected_bin_mass": [float(m) for m in expected],
    }
    text = _report_json(report, started)
    if args.out:
        _write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_validate(args) -> int:
    started = time.perf_counter()
    result = validation.run_validation_suite(args.seed, args.level,
                                             args.threads, args.mutant)
    for comparison in result.comparisons:
        print(comparison)
    passed = sum(r.passed for r in result.comparisons)
    print(f"validation level={args.level} seed={args.seed}: "
          f"{passed}/{len(result.comparisons)} checks passed")

    if args.out:
        report = _base_report("validate", args.seed,
                              RandomSource(args.seed).generator_id, {
                                  "level": args.level,
                                  "mutant": args.mutant,
                                  "quadrature_rule": QUADRATURE_RULE_ID,
                                  "backend": kernels.backend_name(),
                              })
        report["estimates"] = list(result.estimates)
        report["comparisons"] = [r.as_dict() for r in result.comparisons]
        _write_text(args.out, _report_json(report, started))
    return EXIT_OK if result.all_passed else EXIT_VALIDATION_FAILURE


_CHORD_DENSITIES = {
    "fL": (0.0, 1.0, densities.center_distance_density),
    "fD": (0.0, 2.0, densities.endpoint_distance_density),
    "fDalt": (0.0, 2.0, densities.endpoint_distance_density_alt),
    "h": (-2.0 * math.pi, 2.0 * math.pi, densities.angle_difference_density),
}


def cmd_chords(args) -> int:
    started = time.perf_counter()
    lo, hi, density = _CHORD_DENSITIES[args.which]
    xs = np.linspace(lo, hi, args.grid)
    values = np.asarray(density(xs), dtype=np.float64)
    report = _base_report("chords", 0, "none", {
        "which": args.which,
        "grid": args.grid,
        "support": [lo, hi],
    })
    rows = [f"{x:.17g},{v:.17g}" for x, v in zip(xs, values)]
    csv_text = "x,f\n" + "\n".join(rows) + "\n"
    _emit_csv_with_report(args.out, csv_text, report, started)
    return EXIT_OK


# --------------------------------------------------------------------------
# Parser and entry points


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diskchords",
        description="Densities and Monte Carlo checks for random chords "
                    "of the unit disk.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_table = sub.add_parser(
        "density-table",
        help="tabulate the conditional angle density by quadrature")
    p_table.add_argument("--grid", type=_int_at_least(2), default=201,
                         help="number of grid nodes on [0, pi] (default 201)")
    p_table.add_argument("--tol", type=_positive_float, default=None,
                         help="override both quadrature tolerances")
    p_table.add_argument("--format", choices=("csv", "json"), default="csv")
    p_table.add_argument("--out", default=None, help="output path")
    p_table.set_defaults(func=cmd_density_table)

    p_sim = sub.add_parser(
        "simulate",
        help="Monte Carlo crossing probability and conditional angle "
             "histogram")
    p_sim.add_argument("--seed", type=_seed_type, default=0)
    p_sim.add_argument("--samples", type=_int_at_least(1), default=100_000,
                       help="number of segment pairs (default 100000)")
    p_sim.add_argument("--bins", type=_int_at_least(1), default=50)
    p_sim.add_argument("--threads", type=_int_at_least(1), default=1,
                       help="worker threads; never changes the outputs")
    p_sim.add_argument("--out", default=None, help="report path")
    p_sim.set_defaults(func=cmd_simulate)

    p_val = sub.add_parser(
        "validate", help="run the oracle suite and gate on the results")
    p_val.add_argument("--seed", type=_seed_type, default=0)
    p_val.add_argument("--level", choices=("quick", "full"), default="quick")
    p_val.add_argument("--threads", type=_int_at_least(1), default=1,
                       help="worker threads; never changes the outputs")
    p_val.add_argument("--mutant", choices=("none", "fL-constant"),
                       default="none",
                       help="corrupt a constant to prove a test has teeth")
    p_val.add_argument("--out", default=None, help="optional JSON report path")
    p_val.set_defaults(func=cmd_validate)

    p_chords = sub.add_parser(
        "chords", help="tabulate one of the classical chord densities")
    p_chords.add_argument("--which", choices=tuple(_CHORD_DENSITIES),
                          required=True)
    p_chords.add_argument("--grid", type=_int_at_least(2), default=201)
    p_chords.add_argument("--out", default=None, help="output path")
    p_chords.set_defaults(func=cmd_chords)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except QuadratureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main(sys.argv[1:]))

"""Command-line entry point.

Subcommands:
    check <config.json>                       run configured checks
    sweep <config.json> --draws K --seed S    aggregate over random draws
    grid <config.json> --out DIR              write grid CSVs per check
    export-matrix <config.json> --out FILE    dump the operator matrix

Exit codes: 0 all pass, 1 any check failure, 2 configuration error,
3 everything unverified (boundedness gates refused every check).
The CSWCD_GUARD environment variable overrides the trailing guard band.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .diagnostics import (
    boundedness_ratio_grid,
    export_grid_csv,
    nevanlinna_bound_grid,
)
from .errors import ConfigError, UnboundedSymbolError
from .matrices import build_wcd_matrix, export_matrix_csv
from .runner import (
    GRID_CHECKS,
    RunConfig,
    canonical_json,
    check_report_document,
    make_pair,
    parse_config,
    run,
    sweep,
    sweep_report_document,
    timing_sidecar,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_UNVERIFIED = 3


def _load_config(path: str, require_concrete: bool = True) -> RunConfig:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError("$", f"config file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigError("$", f"invalid JSON: {exc}")
    return parse_config(doc, require_concrete=require_concrete)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _exit_code(reports) -> int:
    statuses = [r.status for r in reports]
    if any(s == "fail" for s in statuses):
        return EXIT_FAIL
    if statuses and all(s == "unverified" for s in statuses):
        return EXIT_UNVERIFIED
    return EXIT_PASS


def _cmd_check(args) -> int:
    config = _load_config(args.config)
    reports = run(config)
    _emit(canonical_json(check_report_document(config, reports)), args.out)
    if args.timings:
        Path(args.timings).write_text(
            canonical_json(timing_sidecar(reports)), encoding="utf-8"
        )
    return _exit_code(reports)


def _cmd_sweep(args) -> int:
    config = _load_config(args.config, require_concrete=False)
    seed = config.seed if args.seed is None else args.seed
    aggregate = sweep(config, args.draws, seed)
    _emit(canonical_json(sweep_report_document(config, aggregate, args.draws, seed)), args.out)
    counts = aggregate["checks"]
    total_fail = sum(slot["fail"] for slot in counts.values())
    total_pass = sum(slot["pass"] for slot in counts.values())
    total_unverified = sum(slot["unverified"] for slot in counts.values())
    if total_fail:
        return EXIT_FAIL
    if total_unverified and not total_pass:
        return EXIT_UNVERIFIED
    return EXIT_PASS


def _cmd_grid(args) -> int:
    config = _load_config(args.config)
    grid_checks = [name for name in config.checks if name in GRID_CHECKS]
    if not grid_checks:
        raise ConfigError("checks", "no grid checks configured")
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    pair = make_pair(config.symbols, config.space)
    for name in grid_checks:
        if name == "boundedness-grid":
            report = boundedness_ratio_grid(pair.phi, config.space.alpha, config.space.n)
        else:
            report = nevanlinna_bound_grid(pair.phi, config.space.alpha, config.space.n)
        export_grid_csv(report, out_dir / f"{name}.csv")
    return EXIT_PASS


def _cmd_export_matrix(args) -> int:
    config = _load_config(args.config)
    pair = make_pair(config.symbols, config.space)
    try:
        matrix = build_wcd_matrix(pair, config.space)
    except UnboundedSymbolError as exc:
        sys.stderr.write(f"unverified: {exc}\n")
        return EXIT_UNVERIFIED
    export_matrix_csv(matrix, args.out)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cswcd",
        description="Checks for weighted composition-differentiation operators "
        "on weighted Bergman spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="run the configured checks")
    p_check.add_argument("config")
    p_check.add_argument("--out", help="write the report JSON here instead of stdout")
    p_check.add_argument("--timings", help="write wall-time sidecar JSON here")
    p_check.set_defaults(func=_cmd_check)

    p_sweep = sub.add_parser("sweep", help="aggregate checks over random draws")
    p_sweep.add_argument("config")
    p_sweep.add_argument("--draws", type=int, required=True)
    p_sweep.add_argument("--seed", type=int, default=None,
                         help="override the config seed")
    p_sweep.add_argument("--out", help="write the report JSON here instead of stdout")
    p_sweep.add_argument("--timings", help="write wall-time sidecar JSON here")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_grid = sub.add_parser("grid", help="write grid CSVs for the configured grid checks")
    p_grid.add_argument("config")
    p_grid.add_argument("--out", required=True, help="output directory")
    p_grid.set_defaults(func=_cmd_grid)

    p_export = sub.add_parser("export-matrix", help="dump the operator matrix as CSV")
    p_export.add_argument("config")
    p_export.add_argument("--out", required=True, help="output CSV path")
    p_export.set_defaults(func=_cmd_export_matrix)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        sys.stderr.write(
            canonical_json({"error": str(exc), "path": exc.path})
        )
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

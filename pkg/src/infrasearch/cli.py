"""Command-line surface.

Subcommands: ``list`` (benchmark catalog), ``run`` (single seeded run),
``experiment`` (multi-run batches with CSV/JSON reports), ``grid-search``
(rho selection for one function) and ``baseline`` (uniform random
search at an equal budget). Outputs are byte-identical for identical
flags and seed; wall-clock timings are therefore excluded unless
``--timing`` is passed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .benchmarks import builtin_ids, catalog, spec_of
from .harness import (
    DEFAULT_RHO_GRID,
    ExperimentConfig,
    grid_search_rho,
    grid_table_to_dict,
    random_search_baseline,
    report_to_csv,
    report_to_dict,
    resolve_rho,
    run_experiment,
)
from .isa import IsaParams, SignMode, run_isa

__all__ = ["main", "entry"]


def _default_workers() -> int:
    return os.cpu_count() or 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="infrasearch",
        description="Infrasonic search optimizer and benchmark harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_list = sub.add_parser("list", help="print the benchmark catalog as JSON")
    _add_out(p_list)

    p_run = sub.add_parser("run", help="single seeded run on one function")
    p_run.add_argument("--fn", required=True, help="function id, e.g. F17")
    p_run.add_argument("--seed", type=int, default=42)
    p_run.add_argument("--rho", type=float, default=None,
                       help="attraction parameter; default is the tuned value")
    _add_sign(p_run)
    p_run.add_argument("--timing", action="store_true",
                       help="include elapsed_ms (output no longer byte-stable)")
    _add_out(p_run)

    p_exp = sub.add_parser("experiment", help="multi-run batch over functions")
    p_exp.add_argument("--fn", default="all",
                       help="function id, comma list, or 'all' (default)")
    p_exp.add_argument("--runs", type=int, default=30)
    p_exp.add_argument("--seed", type=int, default=42, help="base seed")
    p_exp.add_argument("--rho", type=float, default=None,
                       help="override rho for every selected function")
    _add_sign(p_exp)
    p_exp.add_argument("--format", choices=("csv", "json"), default="csv")
    p_exp.add_argument("--workers", type=int, default=_default_workers())
    p_exp.add_argument("--verbose", action="store_true",
                       help="JSON output includes per-run records")
    _add_out(p_exp)

    p_grid = sub.add_parser("grid-search", help="pick rho for one function")
    p_grid.add_argument("--fn", required=True, help="function id")
    p_grid.add_argument("--grid", default=None,
                        help="comma list of rho values (default built-in grid)")
    p_grid.add_argument("--runs", type=int, default=5, help="runs per grid point")
    p_grid.add_argument("--seed", type=int, default=42, help="base seed")
    _add_sign(p_grid)
    p_grid.add_argument("--format", choices=("json", "csv"), default="json")
    p_grid.add_argument("--workers", type=int, default=_default_workers())
    _add_out(p_grid)

    p_base = sub.add_parser("baseline", help="uniform random-search baseline")
    p_base.add_argument("--fn", required=True, help="function id")
    p_base.add_argument("--budget", type=int, default=None,
                        help="evaluations; default population x iterations")
    p_base.add_argument("--seed", type=int, default=42)
    _add_out(p_base)

    return parser


def _add_out(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=None, help="output path (default stdout)")


def _add_sign(p: argparse.ArgumentParser) -> None:
    p.add_argument("--sign", choices=("attract", "literal"), default="attract",
                   help="displacement orientation (default attract)")


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _select_functions(selector: str) -> list:
    if selector == "all":
        return list(builtin_ids())
    fids = [tok.strip() for tok in selector.split(",") if tok.strip()]
    if not fids:
        raise ValueError("empty function selector")
    for fid in fids:
        spec_of(fid)  # raises KeyError for unknown ids
    return fids


def _cmd_list(args) -> int:
    _emit(_json(catalog()), args.out)
    return 0


def _cmd_run(args) -> int:
    spec = spec_of(args.fn)
    rho = args.rho if args.rho is not None else resolve_rho(args.fn)
    params = IsaParams(
        rho=rho,
        population_size=spec.default_population,
        iterations=spec.default_iterations,
        seed=args.seed,
        displacement_sign=SignMode(args.sign),
    )
    record = run_isa(args.fn, params)
    _emit(_json(record.to_dict(include_elapsed=args.timing)), args.out)
    return 0


def _cmd_experiment(args) -> int:
    fids = _select_functions(args.fn)
    overrides = {fid: args.rho for fid in fids} if args.rho is not None else {}
    config = ExperimentConfig(
        function_ids=fids,
        runs=args.runs,
        base_seed=args.seed,
        rho_overrides=overrides,
        sign_mode=SignMode(args.sign),
        workers=args.workers,
        keep_records=args.verbose and args.format == "json",
    )
    report = run_experiment(config)
    if args.format == "csv":
        _emit(report_to_csv(report), args.out)
    else:
        _emit(_json(report_to_dict(report, verbose=args.verbose)), args.out)
    return 0


def _cmd_grid_search(args) -> int:
    grid = DEFAULT_RHO_GRID if args.grid is None else \
        [float(tok) for tok in args.grid.split(",") if tok.strip()]
    best_rho, table = grid_search_rho(
        args.fn, grid, runs=args.runs, base_seed=args.seed,
        sign_mode=SignMode(args.sign), workers=args.workers,
    )
    if args.format == "json":
        _emit(_json(grid_table_to_dict(args.fn, best_rho, table)), args.out)
    else:
        lines = ["rho,mean,median,best,worst,std,runs"]
        for point in table:
            s = point.stats
            lines.append(",".join([
                format(point.rho, ".17g"), format(s.mean, ".17g"),
                format(s.median, ".17g"), format(s.best, ".17g"),
                format(s.worst, ".17g"), format(s.std, ".17g"), str(s.runs),
            ]))
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_baseline(args) -> int:
    spec = spec_of(args.fn)
    budget = args.budget
    if budget is None:
        budget = spec.default_population * spec.default_iterations
    record = random_search_baseline(args.fn, budget, args.seed)
    _emit(_json(record.to_dict(include_elapsed=False)), args.out)
    return 0


_COMMANDS = {
    "list": _cmd_list,
    "run": _cmd_run,
    "experiment": _cmd_experiment,
    "grid-search": _cmd_grid_search,
    "baseline": _cmd_baseline,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point returning a process exit code.

    0 on success, 2 on argument errors (bad flags, unknown function ids),
    1 on runtime failures.
    """
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (KeyError, ValueError) as exc:
        message = exc.args[0] if exc.args else exc
        sys.stderr.write(f"infrasearch {args.command}: error: {message}\n")
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        sys.stderr.write(f"infrasearch {args.command}: {exc}\n")
        return 1


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())

"""Multi-run experiment harness.

Executes seeded batches of runs per function, aggregates them into the
summary statistics used throughout (mean, median, best, worst, std),
derives per-function attraction parameters by grid search, and provides
a uniform random-search baseline with the same record shape for sanity
comparisons. Batches are deterministic in the base seed regardless of
worker parallelism: run k of a function always uses ``base_seed + k``
and results are reduced in run-index order.
"""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .benchmarks import Direction, get_objective, spec_of
from .isa import IsaParams, RunRecord, SignMode, run_isa

__all__ = [
    "DEFAULT_RHO_GRID",
    "DEFAULT_RHO",
    "FALLBACK_RHO",
    "SummaryStats",
    "FunctionStats",
    "GridPoint",
    "ExperimentConfig",
    "ExperimentReport",
    "summarize",
    "resolve_rho",
    "run_experiment",
    "grid_search_rho",
    "random_search_baseline",
    "report_to_csv",
    "read_report_csv",
    "report_to_dict",
    "grid_table_to_dict",
]

DEFAULT_RHO_GRID = (1.0, 5.0, 10.0, 20.0, 30.0, 40.0, 50.0,
                    60.0, 70.0, 80.0, 90.0, 100.0)

# Per-function attraction parameters chosen by the bundled grid search
# (DEFAULT_RHO_GRID, 5 runs per point, base seed 1000, default sign mode);
# reproducible via `infrasearch grid-search --fn <id> --runs 5 --seed 1000`.
DEFAULT_RHO: dict = {}

# Used for functions without a tuned entry (e.g. freshly registered ones).
FALLBACK_RHO = 50.0

CSV_HEADER = ("id", "rho", "mean", "median", "best", "worst", "std", "runs")


@dataclass(frozen=True)
class SummaryStats:
    """Aggregate of final best fitnesses over a batch of runs."""

    mean: float
    median: float
    best: float
    worst: float
    std: float
    runs: int


@dataclass(frozen=True)
class FunctionStats:
    """One report row: a function's batch statistics and the rho used."""

    function_id: str
    rho: float
    mean: float
    median: float
    best: float
    worst: float
    std: float
    runs: int


@dataclass(frozen=True)
class GridPoint:
    """Score-table entry of one grid-search candidate."""

    rho: float
    stats: SummaryStats


@dataclass(frozen=True)
class ExperimentConfig:
    """A batch of seeded runs over one or more functions.

    Population and iteration counts default to each function's catalog
    values; ``rho_overrides`` takes precedence over the tuned defaults.
    """

    function_ids: Sequence[str]
    runs: int = 30
    base_seed: int = 42
    rho_overrides: Mapping[str, float] = field(default_factory=dict)
    sign_mode: SignMode = SignMode.ATTRACT
    epsilon_r: float = 1e-12
    population: Optional[int] = None
    iterations: Optional[int] = None
    workers: int = 1
    keep_records: bool = False

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be at least 1")
        if not self.function_ids:
            raise ValueError("at least one function id is required")


@dataclass
class ExperimentReport:
    """Statistics rows for every function in an experiment."""

    rows: list
    base_seed: int
    runs: int
    elapsed: float
    records: Optional[dict] = None


def summarize(records: Iterable, direction: Direction = Direction.MINIMISE) -> SummaryStats:
    """Aggregate run records (or raw fitness values) into summary statistics.

    The median of an even count is the average of the two central values;
    best/worst follow the optimization direction.
    """
    values = np.array([
        float(r.best_fitness) if isinstance(r, RunRecord) else float(r)
        for r in records
    ])
    if values.size == 0:
        raise ValueError("cannot summarize an empty batch")
    lo, hi = float(values.min()), float(values.max())
    best, worst = (lo, hi) if direction is Direction.MINIMISE else (hi, lo)
    return SummaryStats(
        mean=float(values.mean()),
        median=float(np.median(values)),
        best=best,
        worst=worst,
        std=float(values.std()),
        runs=int(values.size),
    )


def resolve_rho(function_id: str, overrides: Optional[Mapping[str, float]] = None) -> float:
    """Effective rho for a function: override, tuned default, then fallback."""
    if overrides and function_id in overrides:
        return float(overrides[function_id])
    return float(DEFAULT_RHO.get(function_id, FALLBACK_RHO))


def _run_task(task):
    fid, rho, population, iterations, seed, sign_value, epsilon_r = task
    params = IsaParams(
        rho=rho,
        population_size=population,
        iterations=iterations,
        seed=seed,
        displacement_sign=SignMode(sign_value),
        epsilon_r=epsilon_r,
    )
    try:
        return run_isa(fid, params)
    except Exception as exc:
        raise RuntimeError(f"run failed for {fid} with seed {seed}: {exc}") from exc


def _execute(tasks, workers: int):
    if workers <= 1:
        return [_run_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_task, tasks, chunksize=1))


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Run ``config.runs`` seeded runs per function and aggregate.

    Run k of every function uses seed ``base_seed + k``, so a report is
    bit-reproducible for a given config independent of ``workers``.
    """
    start = time.perf_counter()
    tasks = []
    for fid in config.function_ids:
        spec = spec_of(fid)
        rho = resolve_rho(fid, config.rho_overrides)
        population = config.population or spec.default_population
        iterations = config.iterations or spec.default_iterations
        for k in range(config.runs):
            tasks.append((fid, rho, population, iterations,
                          config.base_seed + k, config.sign_mode.value,
                          config.epsilon_r))

    results = _execute(tasks, config.workers)

    rows = []
    records = {} if config.keep_records else None
    for i, fid in enumerate(config.function_ids):
        batch = results[i * config.runs:(i + 1) * config.runs]
        stats = summarize(batch, spec_of(fid).direction)
        rho = resolve_rho(fid, config.rho_overrides)
        rows.append(FunctionStats(function_id=fid, rho=rho, mean=stats.mean,
                                  median=stats.median, best=stats.best,
                                  worst=stats.worst, std=stats.std,
                                  runs=stats.runs))
        if records is not None:
            records[fid] = batch
    return ExperimentReport(rows=rows, base_seed=config.base_seed,
                            runs=config.runs,
                            elapsed=time.perf_counter() - start,
                            records=records)


def grid_search_rho(function_id: str,
                    grid: Sequence[float] = DEFAULT_RHO_GRID,
                    runs: int = 5,
                    base_seed: int = 42,
                    *,
                    sign_mode: SignMode = SignMode.ATTRACT,
                    epsilon_r: float = 1e-12,
                    population: Optional[int] = None,
                    iterations: Optional[int] = None,
                    workers: int = 1):
    """Pick the rho with the best median over seeded runs.

    Every grid point reuses the same seed range, making the comparison
    paired and deterministic. Ties go to the smaller rho. Returns the
    winning rho and the full score table in grid order.
    """
    grid = [float(r) for r in grid]
    if not grid:
        raise ValueError("rho grid must not be empty")
    if any(not 0.0 <= r <= 100.0 for r in grid):
        raise ValueError("every grid value must lie in [0, 100]")

    spec = spec_of(function_id)
    population = population or spec.default_population
    iterations = iterations or spec.default_iterations
    tasks = [(function_id, rho, population, iterations, base_seed + k,
              sign_mode.value, epsilon_r)
             for rho in grid for k in range(runs)]
    results = _execute(tasks, workers)

    table = []
    for i, rho in enumerate(grid):
        batch = results[i * runs:(i + 1) * runs]
        table.append(GridPoint(rho=rho, stats=summarize(batch, spec.direction)))

    minimise = spec.direction is Direction.MINIMISE
    def score(point):
        med = point.stats.median
        return (med if minimise else -med, point.rho)
    best = min(table, key=score)
    return best.rho, table


def random_search_baseline(function_id: str, budget: int, seed: int) -> RunRecord:
    """Uniform random sampling inside the bounds with best-so-far tracking.

    Produces the same record shape as a search run (rho is reported as 0)
    so that medians can be compared directly at equal evaluation budgets.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    obj = get_objective(function_id)
    spec = obj.spec
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    samples = spec.bounds.lower + rng.random((budget, spec.dimension)) * spec.bounds.span
    if obj.batch:
        values = np.asarray(obj.fn(samples, rng) if obj.stochastic
                            else obj.fn(samples), dtype=float)
    elif obj.stochastic:
        values = np.array([float(obj.fn(x, rng)) for x in samples])
    else:
        values = np.array([float(obj.fn(x)) for x in samples])

    if spec.direction is Direction.MINIMISE:
        trajectory = np.minimum.accumulate(values)
        pick = int(np.argmin(values))
    else:
        trajectory = np.maximum.accumulate(values)
        pick = int(np.argmax(values))
    return RunRecord(
        function_id=function_id,
        seed=seed,
        rho=0.0,
        best_position=samples[pick].copy(),
        best_fitness=float(values[pick]),
        trajectory=trajectory,
        elapsed=time.perf_counter() - start,
    )


# --- serialization -----------------------------------------------------------

def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def report_to_csv(report: ExperimentReport) -> str:
    """One row per function; reals carry 17 significant digits."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in report.rows:
        writer.writerow([row.function_id, _fmt(row.rho), _fmt(row.mean),
                         _fmt(row.median), _fmt(row.best), _fmt(row.worst),
                         _fmt(row.std), row.runs])
    return out.getvalue()


def read_report_csv(text: str) -> list:
    """Parse `report_to_csv` output back into statistics rows."""
    reader = csv.reader(io.StringIO(text))
    header = tuple(next(reader))
    if header != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header!r}")
    rows = []
    for rec in reader:
        if not rec:
            continue
        rows.append(FunctionStats(
            function_id=rec[0], rho=float(rec[1]), mean=float(rec[2]),
            median=float(rec[3]), best=float(rec[4]), worst=float(rec[5]),
            std=float(rec[6]), runs=int(rec[7]),
        ))
    return rows


def report_to_dict(report: ExperimentReport, verbose: bool = False,
                   include_elapsed: bool = False) -> dict:
    """JSON-ready report; per-run records included when ``verbose``."""
    out = {
        "base_seed": report.base_seed,
        "runs": report.runs,
        "functions": [
            {
                "id": row.function_id,
                "rho": row.rho,
                "mean": row.mean,
                "median": row.median,
                "best": row.best,
                "worst": row.worst,
                "std": row.std,
                "runs": row.runs,
            }
            for row in report.rows
        ],
    }
    if include_elapsed:
        out["elapsed_ms"] = report.elapsed * 1000.0
    if verbose and report.records is not None:
        out["records"] = {
            fid: [rec.to_dict(include_elapsed=include_elapsed) for rec in recs]
            for fid, recs in report.records.items()
        }
    return out


def grid_table_to_dict(function_id: str, best_rho: float, table: Sequence[GridPoint]) -> dict:
    """JSON-ready grid-search outcome."""
    return {
        "function_id": function_id,
        "best_rho": best_rho,
        "table": [
            {
                "rho": point.rho,
                "mean": point.stats.mean,
                "median": point.stats.median,
                "best": point.stats.best,
                "worst": point.stats.worst,
                "std": point.stats.std,
                "runs": point.stats.runs,
            }
            for point in table
        ],
    }

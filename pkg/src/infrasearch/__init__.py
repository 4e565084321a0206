"""Infrasonic search: a population metaheuristic for box-constrained
continuous optimization, with a 23-function benchmark catalog and a
reproducible multi-run experiment harness."""

from .benchmarks import (
    Bounds,
    Direction,
    Objective,
    ObjectiveSpec,
    builtin_ids,
    catalog,
    evaluate,
    function_ids,
    get_objective,
    optimum_position,
    register,
    spec_of,
    unregister,
)
from .harness import (
    DEFAULT_RHO,
    DEFAULT_RHO_GRID,
    ExperimentConfig,
    ExperimentReport,
    FunctionStats,
    GridPoint,
    SummaryStats,
    grid_search_rho,
    random_search_baseline,
    read_report_csv,
    report_to_csv,
    report_to_dict,
    resolve_rho,
    run_experiment,
    summarize,
)
from .isa import (
    IsaParams,
    RunCounters,
    RunRecord,
    SignMode,
    attraction_percentage,
    displacement,
    intensity_matrix,
    normalized_powers,
    repair,
    run_isa,
    select_target,
    shift_positive,
    sound_intensity,
    step_position,
    update_movement,
)

__version__ = "0.1.0"

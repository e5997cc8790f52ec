"""Beetle antennae search (BAS) for derivative-free global minimization."""

from .constrained import (
    ENGINEERING_IDS,
    ConstrainedProblem,
    FeasibilityReport,
    engineering_problem,
    feasibility,
    penalized_objective,
)
from .core import (
    BasParams,
    BeetleState,
    InvalidParameterError,
    NonFiniteObjectiveError,
    Objective,
    RunResult,
    SearchSpace,
    antennae_points,
    bas_step,
    project,
    run,
    sample_direction,
    update_schedules,
)
from .harness import (
    ExperimentConfig,
    ExperimentStats,
    default_config,
    export_results,
    is_success,
    random_init,
    run_experiment,
    success_rate,
)
from .objectives import BENCHMARK_IDS, BenchmarkSpec, benchmark, eval_benchmark

__version__ = "0.1.0"

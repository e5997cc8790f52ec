"""Repeated-run experiments, success statistics and result export."""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .constrained import (
    ENGINEERING_IDS,
    ConstrainedProblem,
    engineering_problem,
    feasibility,
    penalized_objective,
)
from .core import Array, BasParams, RunResult, SearchSpace, run
from .objectives import BENCHMARK_IDS, benchmark

# Second entropy word for the stream that draws x0; the direction stream
# of the same run is seeded with the run seed alone.
_INIT_STREAM = 1

PROBLEM_IDS = BENCHMARK_IDS + ENGINEERING_IDS


def is_success(x_best, x_star, lb: float, ub: float) -> bool:
    """True iff ``sum((x_best - x_star)**2) <= (ub - lb) * 1e-4``."""
    x_best = np.asarray(x_best, dtype=float)
    x_star = np.asarray(x_star, dtype=float)
    if x_best.shape != x_star.shape:
        raise ValueError(f"x_best has shape {x_best.shape}, x_star has {x_star.shape}")
    if not ub > lb:
        raise ValueError(f"ub must exceed lb, got lb={lb}, ub={ub}")
    diff = x_best - x_star
    return float(diff @ diff) <= (ub - lb) * 1e-4


def success_rate(outcomes: Sequence[bool]) -> float:
    """Percentage of successful trials."""
    outcomes = list(outcomes)
    if not outcomes:
        raise ValueError("success_rate needs at least one outcome")
    return 100.0 * sum(1 for ok in outcomes if ok) / len(outcomes)


def random_init(space: SearchSpace, rng: np.random.Generator) -> Array:
    """Uniform draw from a fully bounded box."""
    if not space.is_bounded:
        raise ValueError("uniform initialization needs finite bounds on every coordinate")
    x = rng.uniform(space.lower, space.upper)
    # uniform() is half-open; guard the closed upper edge against rounding.
    return np.minimum(x, space.upper)


def derive_seed(base_seed: int, run_index: int) -> int:
    """64-bit seed for run ``run_index`` of an experiment seeded ``base_seed``.

    Mixes both words through ``numpy.random.SeedSequence`` so every run
    gets a statistically independent stream and adding runs never changes
    the seeds of earlier ones.
    """
    state = np.random.SeedSequence([int(base_seed), int(run_index)]).generate_state(1, np.uint64)
    return int(state[0])


@dataclass(frozen=True)
class SuccessStop:
    """Stop predicate that fires once the best point counts as a success."""

    x_star: Array
    lb: float
    ub: float

    def __call__(self, x_best: Array, f_best: float) -> bool:
        return is_success(x_best, self.x_star, self.lb, self.ub)


@dataclass(frozen=True)
class ExperimentConfig:
    problem: str
    params: BasParams
    n_runs: int = 100
    rho: Optional[float] = None
    success_reference: Optional[Array] = None
    early_stop: bool = False
    keep_traces: bool = True
    workers: int = 1

    def __post_init__(self):
        if self.problem not in PROBLEM_IDS:
            raise KeyError(f"unknown problem {self.problem!r}; expected one of {', '.join(PROBLEM_IDS)}")
        if self.n_runs < 1:
            raise ValueError(f"n_runs must be >= 1, got {self.n_runs}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.rho is not None and not self.rho > 0:
            raise ValueError(f"rho must be > 0, got {self.rho}")
        if self.early_stop and self.success_reference is None:
            raise ValueError("early_stop requires a success_reference")


@dataclass(frozen=True)
class ExperimentStats:
    best_f: float
    mean_f: float
    std_f: float
    n_runs: int
    success_rate: Optional[float] = None
    n_feasible: Optional[int] = None


def default_config(problem: str, n_runs: int = 100, seed: int = 0, **overrides) -> ExperimentConfig:
    """Configuration with the tuned per-problem defaults.

    Benchmarks get their known minimizer as ``success_reference``;
    engineering problems get none.  ``overrides`` may name any
    :class:`BasParams` field or any other config field.
    """
    key = str(problem).lower()
    param_fields = set(BasParams.__dataclass_fields__)
    param_overrides = {k: v for k, v in overrides.items() if k in param_fields and v is not None}
    config_overrides = {k: v for k, v in overrides.items() if k not in param_fields}
    if key in BENCHMARK_IDS:
        spec = benchmark(key)
        params = spec.params
        config_overrides.setdefault("success_reference", spec.x_star)
    elif key in ENGINEERING_IDS:
        params = engineering_problem(key).params
    else:
        raise KeyError(f"unknown problem {problem!r}; expected one of {', '.join(PROBLEM_IDS)}")
    params = replace(params, seed=seed, **param_overrides)
    return ExperimentConfig(problem=key, params=params, n_runs=n_runs, **config_overrides)


def _setup(config: ExperimentConfig):
    """Objective, space, identical bounds (lb, ub) and constrained problem, if any."""
    if config.problem in BENCHMARK_IDS:
        spec = benchmark(config.problem)
        return spec.objective, spec.space, spec.lb, spec.ub, None
    problem: ConstrainedProblem = engineering_problem(config.problem)
    if config.rho is not None:
        problem = problem.with_rho(config.rho)
    space = problem.space
    return (
        penalized_objective(problem), space,
        float(space.lower.min()), float(space.upper.max()), problem,
    )


def single_run(config: ExperimentConfig, run_index: int) -> RunResult:
    """Run ``run_index`` of an experiment, fully determined by the config."""
    objective, space, lb, ub, problem = _setup(config)
    seed = derive_seed(config.params.seed, run_index)
    x0 = random_init(space, np.random.default_rng([seed, _INIT_STREAM]))
    stop = None
    if config.early_stop:
        stop = SuccessStop(np.asarray(config.success_reference, dtype=float), lb, ub)
    result = run(
        objective, space, x0, replace(config.params, seed=seed),
        stop=stop, record_trace=config.keep_traces,
    )
    if config.success_reference is not None:
        result.success = is_success(result.x_best, config.success_reference, lb, ub)
    if problem is not None:
        result.max_violation = feasibility(problem, result.x_best).max_violation
    return result


def _single_run_task(args) -> RunResult:
    return single_run(*args)


def run_experiment(config: ExperimentConfig) -> tuple[ExperimentStats, list[RunResult]]:
    """Execute ``config.n_runs`` independent runs and aggregate them.

    With ``workers > 1`` runs are spread over a process pool; each run's
    seed depends only on its index, so results do not depend on the
    worker count.
    """
    tasks = [(config, j) for j in range(config.n_runs)]
    if config.workers > 1 and config.n_runs > 1:
        with ProcessPoolExecutor(max_workers=min(config.workers, config.n_runs)) as pool:
            results = list(pool.map(_single_run_task, tasks, chunksize=1))
    else:
        results = [single_run(config, j) for j in range(config.n_runs)]
    return summarize(results, config), results


def summarize(results: Sequence[RunResult], config: Optional[ExperimentConfig] = None) -> ExperimentStats:
    if not results:
        raise ValueError("cannot summarize an empty experiment")
    values = np.array([r.f_best for r in results], dtype=float)
    best, worst = float(values.min()), float(values.max())
    # Rounding in the mean must not break best <= mean <= worst.
    mean = min(max(float(values.mean()), best), worst)
    rate = None
    if config is None or config.success_reference is not None:
        outcomes = [r.success for r in results]
        if all(o is not None for o in outcomes):
            rate = success_rate(outcomes)
    violations = [r.max_violation for r in results]
    n_feasible = None
    if all(v is not None for v in violations):
        n_feasible = sum(1 for v in violations if v == 0.0)
    return ExperimentStats(
        best_f=best,
        mean_f=mean,
        std_f=float(values.std()),
        n_runs=len(results),
        success_rate=rate,
        n_feasible=n_feasible,
    )


CSV_HEADER = ("run", "seed", "f_best", "evaluations", "success")


def _format_success(value: Optional[bool]) -> str:
    return "" if value is None else ("true" if value else "false")


def _run_record(index: int, r: RunResult, include_trace: bool) -> dict:
    record = {
        "run": index,
        "seed": r.seed,
        "f_best": r.f_best,
        "evaluations": r.evaluations,
        "iterations": r.iterations,
        "success": r.success,
        "x_best": r.x_best.tolist(),
    }
    if r.max_violation is not None:
        record["max_violation"] = r.max_violation
    if include_trace:
        record["trace"] = np.asarray(r.trace).tolist()
    return record


def render_results(
    stats: ExperimentStats,
    results: Sequence[RunResult],
    format: str = "json",
    include_trace: bool = False,
) -> str:
    """Serialize an experiment to CSV (per-run rows) or JSON (stats + runs)."""
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for j, r in enumerate(results):
            writer.writerow([j, r.seed, repr(float(r.f_best)), r.evaluations, _format_success(r.success)])
        return buf.getvalue()
    if format == "json":
        payload = {
            "stats": asdict(stats),
            "runs": [_run_record(j, r, include_trace) for j, r in enumerate(results)],
        }
        return json.dumps(payload, indent=2, allow_nan=False) + "\n"
    raise ValueError(f"unknown format {format!r}; expected 'csv' or 'json'")


def write_text(destination: Union[str, os.PathLike], text: str) -> None:
    path = Path(destination)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write results to {path}: {exc.strerror}") from exc


def export_results(
    stats: ExperimentStats,
    results: Sequence[RunResult],
    format: str,
    destination: Union[str, os.PathLike],
    include_trace: bool = False,
) -> None:
    write_text(destination, render_results(stats, results, format, include_trace))


def load_results(source: Union[str, os.PathLike]) -> tuple[ExperimentStats, list[dict]]:
    """Read back a JSON export."""
    with open(source, encoding="utf-8") as fh:
        payload = json.load(fh)
    return ExperimentStats(**payload["stats"]), payload["runs"]

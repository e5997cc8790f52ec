"""Command-line front end: ``basopt list | solve | bench``."""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from .constrained import ENGINEERING_IDS, engineering_problem, feasibility
from .core import InvalidParameterError
from .harness import (
    PROBLEM_IDS,
    ExperimentConfig,
    default_config,
    render_results,
    run_experiment,
    single_run,
    summarize,
    write_text,
)
from .objectives import BENCHMARK_IDS, benchmark

_PARAM_FLAGS = {
    "alpha": "--alpha",
    "c": "--c",
    "d0": "--d0",
    "delta0": "--delta0",
    "d_init": "--d-init",
    "step_floor": "--step-floor",
    "k_max": "--kmax",
    "seed": "--seed",
}


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        self.flag = flag
        super().__init__(f"{flag}: {message}")


def _num(value) -> str:
    """Shortest round-trip decimal for floats, plain digits for ints."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def _vector(values) -> str:
    return "[" + ", ".join(_num(float(v)) for v in values) + "]"


def _params_line(params) -> str:
    return (
        f"alpha={_num(params.alpha)} c={_num(params.c)} d0={_num(params.d0)} "
        f"delta0={_num(params.delta0)} d_init={_num(params.d_init)} "
        f"step_floor={_num(params.step_floor)} kmax={params.k_max}"
    )


def cmd_list(args, out) -> int:
    for pid in BENCHMARK_IDS:
        spec = benchmark(pid)
        print(
            f"{pid:<16} benchmark    n={spec.dimension:<3} "
            f"bounds=[{_num(spec.lb)}, {_num(spec.ub)}] {_params_line(spec.params)}",
            file=out,
        )
    for pid in ENGINEERING_IDS:
        problem = engineering_problem(pid)
        print(
            f"{pid:<16} engineering  n={problem.dimension:<3} "
            f"constraints={len(problem.constraints)} rho={_num(problem.rho)} "
            f"{_params_line(problem.params)}",
            file=out,
        )
    return 0


def _build_config(args, n_runs: int) -> ExperimentConfig:
    if args.problem is None:
        raise UsageError("--problem", "required")
    problem = args.problem.lower()
    if problem not in PROBLEM_IDS:
        raise UsageError("--problem", f"unknown problem {args.problem!r}; try one of {', '.join(PROBLEM_IDS)}")
    if args.rho is not None and problem not in ENGINEERING_IDS:
        raise UsageError("--rho", "applies only to engineering problems")
    if args.rho is not None and not args.rho > 0:
        raise UsageError("--rho", f"{args.rho!r} must be > 0")
    if n_runs < 1:
        raise UsageError("--runs", f"{n_runs} must be >= 1")
    if args.threads is not None and args.threads < 1:
        raise UsageError("--threads", f"{args.threads} must be >= 1")
    if args.early_stop and problem not in BENCHMARK_IDS:
        raise UsageError("--early-stop", "needs a benchmark with a known minimizer")
    overrides = dict(
        alpha=args.alpha, c=args.c, d0=args.d0, delta0=args.delta0,
        d_init=args.d_init, step_floor=args.step_floor, k_max=args.kmax,
    )
    try:
        return default_config(
            problem,
            n_runs=n_runs,
            seed=args.seed,
            rho=args.rho,
            early_stop=args.early_stop,
            keep_traces=False,
            workers=args.threads or os.cpu_count() or 1,
            **overrides,
        )
    except InvalidParameterError as exc:
        raise UsageError(_PARAM_FLAGS.get(exc.name, exc.name), str(exc).split(" ", 1)[1]) from exc


def cmd_solve(args, out) -> int:
    config = _build_config(args, 1)
    result = single_run(config, 0)
    lines = [
        f"problem: {config.problem}",
        f"seed: {result.seed}",
        f"x_best: {_vector(result.x_best)}",
        f"f_best: {_num(result.f_best)}",
        f"evaluations: {result.evaluations}",
    ]
    if result.success is not None:
        lines.append(f"success: {_num(result.success)}")
    if config.problem in ENGINEERING_IDS:
        problem = engineering_problem(config.problem)
        report = feasibility(problem, result.x_best)
        lines.append(f"f_raw: {_num(problem.objective(result.x_best))}")
        for i, g in enumerate(report.constraint_values, 1):
            lines.append(f"g{i}: {_num(g)}")
        lines.append(f"max_violation: {_num(report.max_violation)}")
        lines.append(f"in_bounds: {_num(report.in_bounds)}")
    print("\n".join(lines), file=out)
    if args.out:
        write_text(args.out, render_results(summarize([result], config), [result], args.format))
    return 0


def cmd_bench(args, out) -> int:
    config = _build_config(args, args.runs)
    stats, results = run_experiment(config)
    rate = "-" if stats.success_rate is None else _num(stats.success_rate)
    print("problem runs success_rate best_f mean_f std_f", file=out)
    print(
        f"{config.problem} {stats.n_runs} {rate} {_num(stats.best_f)} "
        f"{_num(stats.mean_f)} {_num(stats.std_f)}",
        file=out,
    )
    if stats.n_feasible is not None:
        print(f"feasible_runs: {stats.n_feasible}", file=out)
    if args.out:
        write_text(args.out, render_results(stats, results, args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="basopt", description="Beetle antennae search: benchmarks and engineering design problems."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("list", help="show problem ids and their default settings")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--problem", help="benchmark id f1..f7 or engineering id")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--kmax", type=int)
    common.add_argument("--alpha", type=float)
    common.add_argument("--c", type=float)
    common.add_argument("--d0", type=float)
    common.add_argument("--delta0", type=float)
    common.add_argument("--d-init", dest="d_init", type=float)
    common.add_argument("--step-floor", dest="step_floor", type=float)
    common.add_argument("--rho", type=float, help="penalty weight (engineering problems)")
    common.add_argument("--out", help="also write results to this file")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--threads", type=int, help="worker processes for bench (default: all cores)")
    common.add_argument("--early-stop", action="store_true", help="end a benchmark run once it succeeds")

    sub.add_parser("solve", parents=[common], help="single run")
    bench = sub.add_parser("bench", parents=[common], help="repeated runs with statistics")
    bench.add_argument("--runs", type=int, default=100)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    handlers = {"list": cmd_list, "solve": cmd_solve, "bench": cmd_bench}
    try:
        return handlers[args.command](args, out)
    except UsageError as exc:
        print(f"basopt: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"basopt: error: --out: {exc.strerror or exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

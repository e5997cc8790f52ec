"""Penalty transformation and the three engineering design problems.

Inequality constraints are written ``g_i(x) <= 0``.  The penalized
objective adds ``rho * sum_i max(0, g_i(x))`` to the raw objective, which
turns each problem into a box-constrained one that BAS can search
directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence

import numpy as np

from .core import Array, BasParams, Objective, SearchSpace

ENGINEERING_IDS = ("spring", "speed_reducer", "three_bar_truss")

# Open bounds 0 < x < 1 of the truss become this closed lower edge.
TRUSS_LOWER = 1e-9

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class _Component:
    """The i-th entry of a vector-valued constraint function."""

    func: Callable[[Array], Sequence[float]]
    index: int

    def __call__(self, x: Array) -> float:
        return self.func(x)[self.index]


@dataclass(frozen=True)
class ConstrainedProblem:
    """Minimize ``objective`` subject to ``g(x) <= 0`` for every constraint.

    ``all_constraints``, when given, returns every ``g_i(x)`` in one call
    and must agree with ``constraints``; it only exists to avoid repeated
    work on problems whose constraints share subexpressions.
    """

    name: str
    objective: Objective
    constraints: tuple[Objective, ...]
    space: SearchSpace
    rho: float
    params: Optional[BasParams] = None
    all_constraints: Optional[Callable[[Array], Sequence[float]]] = None

    def __post_init__(self):
        if not self.rho > 0:
            raise ValueError(f"rho must be > 0, got {self.rho}")
        n = self.objective.dimension
        if self.space.dimension != n:
            raise ValueError(f"space has dimension {self.space.dimension}, objective has {n}")
        for i, g in enumerate(self.constraints, 1):
            if g.dimension != n:
                raise ValueError(f"constraint g{i} has dimension {g.dimension}, objective has {n}")
        object.__setattr__(self, "constraints", tuple(self.constraints))

    @property
    def dimension(self) -> int:
        return self.objective.dimension

    def constraint_values(self, x: Array) -> list[float]:
        if self.all_constraints is not None:
            return [float(v) for v in self.all_constraints(x)]
        return [float(g(x)) for g in self.constraints]

    def with_rho(self, rho: float) -> "ConstrainedProblem":
        return replace(self, rho=rho)


@dataclass(frozen=True)
class FeasibilityReport:
    constraint_values: Array
    max_violation: float
    in_bounds: bool

    @property
    def feasible(self) -> bool:
        return self.max_violation == 0.0 and self.in_bounds


@dataclass(frozen=True)
class PenalizedObjective:
    """``f(x) + rho * sum(max(0, g_i(x)))`` for a constrained problem."""

    problem: ConstrainedProblem

    @property
    def dimension(self) -> int:
        return self.problem.dimension

    def __call__(self, x: Array) -> float:
        f = float(self.problem.objective(x))
        violation = sum(g for g in self.problem.constraint_values(x) if g > 0.0)
        if violation == 0.0:
            return f
        return f + self.problem.rho * violation


def penalized_objective(problem: ConstrainedProblem) -> PenalizedObjective:
    return PenalizedObjective(problem)


def feasibility(problem: ConstrainedProblem, x) -> FeasibilityReport:
    x = np.asarray(x, dtype=float)
    if x.shape != (problem.dimension,):
        raise ValueError(f"{problem.name} expects a vector of length {problem.dimension}, got shape {x.shape}")
    g = np.array(problem.constraint_values(x))
    return FeasibilityReport(
        constraint_values=g,
        max_violation=float(max(0.0, g.max())) if g.size else 0.0,
        in_bounds=problem.space.contains(x),
    )


# --- tension/compression spring: x = (W, D, L) -----------------------------

def spring_weight(x: Array) -> float:
    w, d, coils = x.tolist()
    return (coils + 2.0) * w * w * d


def spring_constraints(x: Array) -> list[float]:
    w, d, coils = x.tolist()
    return [
        1.0 - d**3 * coils / (71785.0 * w**4),
        1.0 - 140.45 * w / (d * d * coils),
        2.0 * (w + d) / 3.0 - 1.0,
        d * (4.0 * d - w) / (w**3 * (12566.0 * d - w)) + 1.0 / (5108.0 * w * w) - 1.0,
    ]


# --- speed reducer: x = (B, H, Z, L1, L2, D1, D2) --------------------------

def speed_reducer_weight(x: Array) -> float:
    b, h, z, l1, l2, d1, d2 = x.tolist()
    return (
        0.7854 * b * h * h * (3.3333 * z * z + 14.9334 * z - 43.0934)
        - 1.508 * b * (d1 * d1 + d2 * d2)
        + 7.4777 * (d1**3 + d2**3)
        + 0.7854 * (l1 * d1 * d1 + l2 * d2 * d2)
    )


def speed_reducer_constraints(x: Array) -> list[float]:
    b, h, z, l1, l2, d1, d2 = x.tolist()
    bh2 = b * h * h
    hz = h * z
    return [
        27.0 / (bh2 * z) - 1.0,
        397.5 / (bh2 * z * z) - 1.0,
        1.93 * l1**3 / (hz * d1**4) - 1.0,
        1.93 * l2**3 / (hz * d2**4) - 1.0,
        math.sqrt((745.0 * l1 / hz) ** 2 + 16.9e6) / (110.0 * d1**3) - 1.0,
        math.sqrt((745.0 * l2 / hz) ** 2 + 157.5e6) / (85.0 * d2**3) - 1.0,
        hz / 40.0 - 1.0,
        5.0 * h / b - 1.0,
        b / (12.0 * h) - 1.0,
        (1.5 * d1 + 1.9) / l1 - 1.0,
        (1.1 * d2 + 1.9) / l2 - 1.0,
    ]


# --- three-bar truss: x = (x1, x2) ------------------------------------------

def truss_volume(x: Array) -> float:
    x1, x2 = x.tolist()
    return 100.0 * (2.0 * SQRT2 * x1 + x2)


def truss_constraints(x: Array) -> list[float]:
    x1, x2 = x.tolist()
    denom = SQRT2 * x1 * x1 + 2.0 * x1 * x2
    return [
        2.0 * (SQRT2 * x1 + x2) / denom - 2.0,
        2.0 * x2 / denom - 2.0,
        2.0 / (x1 + SQRT2 * x2) - 2.0,
    ]


def _build(name, objective, constraints, count, lower, upper, rho, alpha, c, d0, k_max):
    n = len(lower)
    space = SearchSpace(np.array(lower, dtype=float), np.array(upper, dtype=float))
    params = BasParams(
        alpha=alpha, c=c, d0=d0,
        delta0=10.0, d_init=float(max(upper)), k_max=k_max,
    )
    return ConstrainedProblem(
        name=name,
        objective=Objective(n, objective, name),
        constraints=tuple(
            Objective(n, _Component(constraints, i), f"{name}.g{i + 1}") for i in range(count)
        ),
        space=space,
        rho=rho,
        params=params,
        all_constraints=constraints,
    )


def engineering_problem(id: str) -> ConstrainedProblem:
    """Build one of ``"spring"``, ``"speed_reducer"``, ``"three_bar_truss"``.

    The bundled ``params`` start from ``delta0 = 10`` and
    ``d_init = max(upper)``.
    """
    key = str(id).lower()
    if key == "spring":
        return _build(
            "spring", spring_weight, spring_constraints, 4,
            lower=[0.05, 0.25, 2.0], upper=[2.0, 1.3, 15.0],
            rho=1e5, alpha=0.8, c=0.8, d0=0.01, k_max=1000,
        )
    if key == "speed_reducer":
        return _build(
            "speed_reducer", speed_reducer_weight, speed_reducer_constraints, 11,
            lower=[2.6, 0.7, 17.0, 7.3, 7.8, 2.9, 5.0],
            upper=[3.6, 0.8, 28.0, 8.3, 8.3, 3.9, 5.5],
            rho=1e6, alpha=0.8, c=0.8, d0=0.001, k_max=10_000,
        )
    if key == "three_bar_truss":
        return _build(
            "three_bar_truss", truss_volume, truss_constraints, 3,
            lower=[TRUSS_LOWER, TRUSS_LOWER], upper=[1.0, 1.0],
            rho=1e5, alpha=0.8, c=0.8, d0=0.01, k_max=10_000,
        )
    raise KeyError(f"unknown engineering problem {id!r}; expected one of {', '.join(ENGINEERING_IDS)}")

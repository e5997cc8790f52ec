"""Beetle antennae search engine.

A single beetle sits at a centroid ``x`` and probes the objective at two
antipodal antenna tips ``x + d*b`` and ``x - d*b`` along a random unit
direction ``b``.  It then steps a distance ``delta`` towards the tip with
the smaller value, and both ``delta`` and ``d`` decay geometrically to a
floor.  Bounded problems are handled by clamping the centroid to a box.
"""

from __future__ import annotations

import math
from functools import cached_property
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

Array = np.ndarray
StopPredicate = Callable[[Array, float], bool]

_MIN_DRAW_NORM = 1e-12
_UINT64_MAX = 2**64 - 1


class NonFiniteObjectiveError(ValueError):
    """Raised when the objective returns NaN or an infinity."""

    def __init__(self, point: Array, value: float):
        self.point = np.array(point, dtype=float)
        self.value = value
        super().__init__(f"objective returned {value!r} at x={self.point.tolist()}")


class InvalidParameterError(ValueError):
    """A hyperparameter violates its allowed range."""

    def __init__(self, name: str, value, reason: str):
        self.name = name
        self.value = value
        super().__init__(f"{name}={value!r} {reason}")


@dataclass(frozen=True)
class Objective:
    """A named scalar function of a fixed-length real vector."""

    dimension: int
    func: Callable[[Array], float]
    name: str = ""

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dimension}")

    def __call__(self, x: Array) -> float:
        return self.func(x)


@dataclass(frozen=True)
class SearchSpace:
    """Axis-aligned box; infinite entries give an unbounded direction."""

    lower: Array
    upper: Array

    def __post_init__(self):
        lower = np.array(self.lower, dtype=float).reshape(-1)
        upper = np.array(self.upper, dtype=float).reshape(-1)
        if lower.size < 1 or lower.shape != upper.shape:
            raise ValueError(
                f"lower and upper must be non-empty and of equal length, "
                f"got {lower.size} and {upper.size}"
            )
        if np.any(np.isnan(lower)) or np.any(np.isnan(upper)):
            raise ValueError("bounds must not be NaN")
        if not np.all(lower < upper):
            raise ValueError("every lower bound must be strictly below its upper bound")
        lower.flags.writeable = False
        upper.flags.writeable = False
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def box(cls, lb: float, ub: float, n: int) -> "SearchSpace":
        """Hypercube ``[lb, ub]^n``."""
        return cls(np.full(n, lb, dtype=float), np.full(n, ub, dtype=float))

    @classmethod
    def unbounded(cls, n: int) -> "SearchSpace":
        return cls.box(-math.inf, math.inf, n)

    @property
    def dimension(self) -> int:
        return self.lower.size

    @property
    def is_bounded(self) -> bool:
        return bool(np.all(np.isfinite(self.lower)) and np.all(np.isfinite(self.upper)))

    @cached_property
    def has_bounds(self) -> bool:
        """True if at least one bound is finite, i.e. projection can move a point."""
        return bool(np.any(np.isfinite(self.lower)) or np.any(np.isfinite(self.upper)))

    def contains(self, x: Array) -> bool:
        x = np.asarray(x, dtype=float)
        return x.shape == self.lower.shape and bool(
            np.all(x >= self.lower) and np.all(x <= self.upper)
        )


@dataclass(frozen=True)
class BasParams:
    """Scalar hyperparameters of one BAS run.

    ``delta`` follows ``delta' = alpha*delta + step_floor`` and the antenna
    length follows ``d' = c*d + d0``; ``delta0`` and ``d_init`` are the
    starting values.
    """

    alpha: float
    c: float
    d0: float
    delta0: float = 10.0
    d_init: float = 10.0
    step_floor: float = 0.001
    k_max: int = 100_000
    seed: int = 0

    def __post_init__(self):
        checks = [
            ("alpha", 0.0 < self.alpha < 1.0, "must lie in (0, 1)"),
            ("c", self.c > 0.0, "must be > 0"),
            ("d0", self.d0 > 0.0, "must be > 0"),
            ("delta0", self.delta0 > 0.0, "must be > 0"),
            ("d_init", self.d_init > 0.0, "must be > 0"),
            ("step_floor", self.step_floor >= 0.0, "must be >= 0"),
        ]
        for name, ok, msg in checks:
            value = getattr(self, name)
            if not (ok and math.isfinite(value)):
                raise InvalidParameterError(name, value, msg)
        if isinstance(self.k_max, bool) or int(self.k_max) != self.k_max or self.k_max < 0:
            raise InvalidParameterError("k_max", self.k_max, "must be a non-negative integer")
        if isinstance(self.seed, bool) or int(self.seed) != self.seed or not 0 <= self.seed <= _UINT64_MAX:
            raise InvalidParameterError("seed", self.seed, "must be an unsigned 64-bit integer")
        object.__setattr__(self, "k_max", int(self.k_max))
        object.__setattr__(self, "seed", int(self.seed))

    @property
    def step_limit(self) -> float:
        """Fixed point of the step-size recursion."""
        return self.step_floor / (1.0 - self.alpha)

    @property
    def antenna_limit(self) -> float:
        """Fixed point of the antenna recursion (finite only for ``c < 1``)."""
        return self.d0 / (1.0 - self.c) if self.c < 1.0 else math.inf


@dataclass(frozen=True)
class BeetleState:
    x: Array
    delta: float
    d: float
    k: int = 0


@dataclass
class RunResult:
    """Outcome of one run.

    ``trace[0]`` is ``f(x0)`` and ``trace[j]`` the best centroid value after
    ``j`` iterations, so ``len(trace) == iterations + 1`` and
    ``trace[-1] == f_best``.  ``success`` and ``max_violation`` are filled
    in by the experiment harness when they apply.
    """

    x_best: Array
    f_best: float
    evaluations: int
    trace: Array
    seed: int
    iterations: int = 0
    success: Optional[bool] = None
    max_violation: Optional[float] = None


def sample_direction(n: int, rng: np.random.Generator) -> Array:
    """Random unit vector: i.i.d. uniform(-1, 1) components, normalized."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    while True:
        draw = rng.uniform(-1.0, 1.0, n)
        norm = math.sqrt(float(draw @ draw))
        if norm >= _MIN_DRAW_NORM:
            return draw / norm


class DirectionStream:
    """Block-buffered source of unit directions.

    Draws ``block`` raw vectors at a time from ``rng``; the rare row whose
    norm is below 1e-12 is replaced by a fresh :func:`sample_direction`
    draw.  The sequence is fully determined by the generator state.
    """

    def __init__(self, n: int, rng: np.random.Generator, block: int = 1024):
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        self.n = n
        self.rng = rng
        self.block = block
        self._buf: Array = np.empty((0, n))
        self._pos = 0

    def _refill(self) -> None:
        draws = self.rng.uniform(-1.0, 1.0, (self.block, self.n))
        norms = np.sqrt(np.einsum("ij,ij->i", draws, draws))
        for i in np.flatnonzero(norms < _MIN_DRAW_NORM):
            draws[i] = sample_direction(self.n, self.rng)
            norms[i] = 1.0
        self._buf = draws / norms[:, None]
        self._pos = 0

    def __call__(self) -> Array:
        if self._pos >= len(self._buf):
            self._refill()
        b = self._buf[self._pos]
        self._pos += 1
        return b


def antennae_points(x: Array, d: float, b: Array) -> tuple[Array, Array]:
    """Left and right antenna tips ``(x + d*b, x - d*b)``."""
    x = np.asarray(x, dtype=float)
    b = np.asarray(b, dtype=float)
    if x.shape != b.shape:
        raise ValueError(f"x and b must have equal shape, got {x.shape} and {b.shape}")
    if d < 0:
        raise ValueError(f"antenna length must be >= 0, got {d}")
    db = d * b
    return x + db, x - db


def update_schedules(delta: float, d: float, params: BasParams) -> tuple[float, float]:
    return params.alpha * delta + params.step_floor, params.c * d + params.d0


def project(x: Array, space: SearchSpace) -> Array:
    """Componentwise clamp of ``x`` into ``space``."""
    x = np.asarray(x, dtype=float)
    if x.shape != space.lower.shape:
        raise ValueError(f"x has shape {x.shape}, space has dimension {space.dimension}")
    return np.minimum(np.maximum(x, space.lower), space.upper)


def _evaluate(objective: Callable[[Array], float], x: Array) -> float:
    value = float(objective(x))
    if not math.isfinite(value):
        raise NonFiniteObjectiveError(x, value)
    return value


def _move(x: Array, delta: float, d: float, b: Array, objective, space: SearchSpace) -> Array:
    # Two antenna evaluations, then a signed step; a tie leaves x in place.
    db = d * b
    f_left = _evaluate(objective, x + db)
    f_right = _evaluate(objective, x - db)
    if f_left > f_right:
        x = x - delta * b
    elif f_left < f_right:
        x = x + delta * b
    else:
        return x
    if space.has_bounds:
        x = np.minimum(np.maximum(x, space.lower), space.upper)
    return x


def bas_step(
    state: BeetleState,
    objective: Callable[[Array], float],
    space: SearchSpace,
    params: BasParams,
    rng: Optional[np.random.Generator] = None,
    direction: Optional[Array] = None,
) -> BeetleState:
    """Advance the beetle by one iteration.

    Uses ``direction`` when given, otherwise draws one from ``rng``.
    Exactly two objective evaluations are made (the antenna tips); the new
    centroid is not evaluated here.
    """
    x = np.asarray(state.x, dtype=float)
    if x.shape != space.lower.shape:
        raise ValueError(f"state has dimension {x.size}, space has {space.dimension}")
    if direction is None:
        if rng is None:
            raise ValueError("either rng or direction is required")
        b = sample_direction(x.size, rng)
    else:
        b = np.asarray(direction, dtype=float)
        if b.shape != x.shape:
            raise ValueError(f"direction has shape {b.shape}, expected {x.shape}")
    x_next = _move(x, state.delta, state.d, b, objective, space)
    delta, d = update_schedules(state.delta, state.d, params)
    return BeetleState(x=x_next, delta=delta, d=d, k=state.k + 1)


def run(
    objective: Callable[[Array], float],
    space: SearchSpace,
    x0: Array,
    params: BasParams,
    stop: Optional[StopPredicate] = None,
    record_trace: bool = True,
) -> RunResult:
    """Minimize ``objective`` over ``space`` starting from ``x0``.

    The best point is tracked over centroid iterates only and replaced on
    strict improvement.  ``stop(x_best, f_best)`` is consulted after
    initialization and after every improvement; a true result ends the
    run early.  Directions come from a :class:`DirectionStream` seeded with
    ``params.seed``.

    With ``record_trace=False`` the trace holds only ``[f(x0), f_best]``.
    """
    x = np.array(x0, dtype=float).reshape(-1)
    if x.shape != space.lower.shape:
        raise ValueError(f"x0 has dimension {x.size}, space has {space.dimension}")
    if not space.contains(x):
        raise ValueError(f"x0 lies outside the search space: {x.tolist()}")

    if isinstance(objective, Objective):
        objective = objective.func
    directions = DirectionStream(x.size, np.random.default_rng(params.seed))
    alpha, c, floor, d0 = params.alpha, params.c, params.step_floor, params.d0
    delta, d = float(params.delta0), float(params.d_init)

    f_best = _evaluate(objective, x)
    x_best = x
    trace = [f_best]
    iterations = 0
    if stop is None or not stop(x_best, f_best):
        for k in range(params.k_max):
            x = _move(x, delta, d, directions(), objective, space)
            delta = alpha * delta + floor
            d = c * d + d0
            fx = _evaluate(objective, x)
            if fx < f_best:
                f_best, x_best = fx, x
                if stop is not None and stop(x_best, f_best):
                    iterations = k + 1
                    if record_trace:
                        trace.append(f_best)
                    break
            if record_trace:
                trace.append(f_best)
        else:
            iterations = params.k_max
    if not record_trace:
        trace.append(f_best)

    return RunResult(
        x_best=np.array(x_best),
        f_best=f_best,
        evaluations=1 + 3 * iterations,
        trace=np.array(trace),
        seed=params.seed,
        iterations=iterations,
    )

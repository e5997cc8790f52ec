"""The seven benchmark functions and their search settings.

Every function takes a 1-D float array.  Bounds are identical per
coordinate: [-10, 10] everywhere except ``f6`` which uses [-2*pi, 2*pi].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Array, BasParams, Objective, SearchSpace

BENCHMARK_IDS = ("f1", "f2", "f3", "f4", "f5", "f6", "f7")


def norm2(x: Array) -> float:
    """Euclidean norm. Minimum 0 at the origin."""
    return math.hypot(*x.tolist())


def abs_sum_product(x: Array) -> float:
    """Sum of |x_i| plus product of |x_i|. Minimum 0 at the origin."""
    a = [abs(v) for v in x.tolist()]
    return sum(a) + math.prod(a)


def rosenbrock(x: Array) -> float:
    """Minimum 0 at the all-ones vector."""
    v = x.tolist()
    total = 0.0
    for a, b in zip(v, v[1:]):
        t = b - a * a
        u = a - 1.0
        total += 100.0 * t * t + u * u
    return total


def ackley(x: Array) -> float:
    """Minimum 0 at the origin."""
    v = x.tolist()
    n = len(v)
    r = math.sqrt(sum(t * t for t in v) / n)
    s = sum(math.cos(2.0 * math.pi * t) for t in v) / n
    return -20.0 * math.exp(-0.2 * r) - math.exp(s) + 20.0 + math.e


def cosine_product(x: Array) -> float:
    """``1 + sum(x^2)/4000 - prod(cos(x_i) / sqrt(i))``.

    The cosine takes ``x_i`` itself rather than ``x_i/sqrt(i)`` as in the
    familiar Griewank function, so the value at the origin is
    ``1 - 1/sqrt(n!)`` instead of 0.
    """
    v = x.tolist()
    prod = 1.0
    for i, t in enumerate(v, 1):
        prod *= math.cos(t) / math.sqrt(i)
    return 1.0 + sum(t * t for t in v) / 4000.0 - prod


def abs_sum_sine_decay(x: Array) -> float:
    """``sum|x_i| * exp(-sum sin(x_i^2))``. Minimum 0 at the origin."""
    v = x.tolist()
    return sum(abs(t) for t in v) * math.exp(-sum(math.sin(t * t) for t in v))


def zakharov(x: Array) -> float:
    """Minimum 0 at the origin."""
    v = x.tolist()
    s = 0.5 * sum(i * t for i, t in enumerate(v, 1))
    return sum(t * t for t in v) + s * s + s**4


_FUNCTIONS = {
    "f1": (norm2, 30),
    "f2": (abs_sum_product, 20),
    "f3": (rosenbrock, 10),
    "f4": (ackley, 10),
    "f5": (cosine_product, 10),
    "f6": (abs_sum_sine_decay, 5),
    "f7": (zakharov, 20),
}

# (alpha, d0, c) per benchmark.
_TUNED = {
    "f1": (0.94, 0.001, 0.94),
    "f2": (0.95, 0.001, 0.94),
    "f3": (0.7, 0.001, 0.7),
    "f4": (0.97, 0.01, 0.97),
    "f5": (0.94, 0.001, 0.94),
    "f6": (0.96, 0.1, 0.96),
    "f7": (0.8, 0.01, 0.8),
}

BENCHMARK_K_MAX = 100_000
BENCHMARK_DELTA0 = 10.0


@dataclass(frozen=True)
class BenchmarkSpec:
    id: str
    dimension: int
    objective: Objective
    space: SearchSpace
    x_star: Array
    lb: float
    ub: float
    params: BasParams

    @property
    def f_star(self) -> float:
        return self.objective(self.x_star)


def _check_id(id: str) -> str:
    key = str(id).lower()
    if key not in _FUNCTIONS:
        raise KeyError(f"unknown benchmark {id!r}; expected one of {', '.join(BENCHMARK_IDS)}")
    return key


def benchmark(id: str) -> BenchmarkSpec:
    """Look up a benchmark by id (``"f1"`` .. ``"f7"``).

    ``params`` carries the tuned decay settings with ``delta0 = 10``,
    ``d_init = ub`` and ``k_max = 1e5``.
    """
    key = _check_id(id)
    func, n = _FUNCTIONS[key]
    lb, ub = (-2.0 * math.pi, 2.0 * math.pi) if key == "f6" else (-10.0, 10.0)
    x_star = np.ones(n) if key == "f3" else np.zeros(n)
    x_star.flags.writeable = False
    alpha, d0, c = _TUNED[key]
    params = BasParams(
        alpha=alpha, c=c, d0=d0,
        delta0=BENCHMARK_DELTA0, d_init=ub, k_max=BENCHMARK_K_MAX,
    )
    return BenchmarkSpec(
        id=key,
        dimension=n,
        objective=Objective(n, func, key),
        space=SearchSpace.box(lb, ub, n),
        x_star=x_star,
        lb=lb,
        ub=ub,
        params=params,
    )


def eval_benchmark(id: str, x) -> float:
    key = _check_id(id)
    func, n = _FUNCTIONS[key]
    x = np.asarray(x, dtype=float)
    if x.shape != (n,):
        raise ValueError(f"{key} expects a vector of length {n}, got shape {x.shape}")
    return func(x)

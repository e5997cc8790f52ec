import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from basopt.objectives import BENCHMARK_IDS, benchmark, eval_benchmark

# Vectorized reference formulas, written independently of the package.
REFERENCE = {
    "f1": lambda x: np.sqrt(np.sum(x**2)),
    "f2": lambda x: np.sum(np.abs(x)) + np.prod(np.abs(x)),
    "f3": lambda x: np.sum(100 * (x[1:] - x[:-1] ** 2) ** 2 + (x[:-1] - 1) ** 2),
    "f4": lambda x: (-20 * np.exp(-0.2 * np.sqrt(np.mean(x**2)))
                     - np.exp(np.mean(np.cos(2 * np.pi * x))) + 20 + np.e),
    "f5": lambda x: 1 + np.sum(x**2) / 4000 - np.prod(np.cos(x) / np.sqrt(np.arange(1, x.size + 1))),
    "f6": lambda x: np.sum(np.abs(x)) * np.exp(-np.sum(np.sin(x**2))),
    "f7": lambda x: (np.sum(x**2) + (0.5 * np.sum(np.arange(1, x.size + 1) * x)) ** 2
                     + (0.5 * np.sum(np.arange(1, x.size + 1) * x)) ** 4),
}

DIMENSIONS = {"f1": 30, "f2": 20, "f3": 10, "f4": 10, "f5": 10, "f6": 5, "f7": 20}


@pytest.mark.parametrize("fid", BENCHMARK_IDS)
def test_dimension_and_bounds(fid):
    spec = benchmark(fid)
    assert spec.dimension == DIMENSIONS[fid]
    if fid == "f6":
        assert (spec.lb, spec.ub) == (-2 * math.pi, 2 * math.pi)
    else:
        assert (spec.lb, spec.ub) == (-10.0, 10.0)
    assert spec.space.contains(spec.x_star)
    assert spec.params.delta0 == 10.0
    assert spec.params.d_init == spec.ub
    assert spec.params.k_max == 100_000


def test_tuned_parameters():
    expected = {
        "f1": (0.94, 0.001, 0.94), "f2": (0.95, 0.001, 0.94), "f3": (0.7, 0.001, 0.7),
        "f4": (0.97, 0.01, 0.97), "f5": (0.94, 0.001, 0.94), "f6": (0.96, 0.1, 0.96),
        "f7": (0.8, 0.01, 0.8),
    }
    for fid, (alpha, d0, c) in expected.items():
        p = benchmark(fid).params
        assert (p.alpha, p.d0, p.c) == (alpha, d0, c)


def test_rosenbrock_minimizer_is_ones():
    np.testing.assert_array_equal(benchmark("f3").x_star, np.ones(10))


@pytest.mark.parametrize("fid", ["f1", "f2", "f3", "f4", "f6", "f7"])
def test_value_at_minimizer(fid):
    spec = benchmark(fid)
    assert abs(eval_benchmark(fid, spec.x_star)) <= 1e-12


def test_f5_origin_high_precision():
    mpmath.mp.dps = 40
    exact = 1 - 1 / mpmath.sqrt(mpmath.factorial(10))
    assert abs(eval_benchmark("f5", np.zeros(10)) - float(exact)) <= 1e-12
    assert eval_benchmark("f5", np.zeros(10)) == pytest.approx(0.9994750, abs=5e-8)


def test_simple_points():
    e1 = np.zeros(30)
    e1[0] = 1.0
    assert eval_benchmark("f1", e1) == 1.0
    assert abs(eval_benchmark("f4", np.zeros(10))) <= 1e-12


@pytest.mark.parametrize("fid", BENCHMARK_IDS)
def test_matches_reference(fid):
    spec = benchmark(fid)
    rng = np.random.default_rng(2024)
    for _ in range(200):
        x = rng.uniform(spec.lb, spec.ub, spec.dimension)
        ours = eval_benchmark(fid, x)
        ref = float(REFERENCE[fid](x))
        assert ours == pytest.approx(ref, rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("fid", BENCHMARK_IDS)
def test_finite_and_deterministic_on_box(fid):
    spec = benchmark(fid)
    rng = np.random.default_rng(7)
    xs = rng.uniform(spec.lb, spec.ub, (500, spec.dimension))
    xs[0], xs[1] = spec.space.lower, spec.space.upper
    for x in xs:
        v = eval_benchmark(fid, x)
        assert math.isfinite(v)
        assert v == eval_benchmark(fid, x.copy())


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 2**32), fid=st.sampled_from(["f1", "f2"]))
def test_even_symmetry(seed, fid):
    spec = benchmark(fid)
    x = np.random.default_rng(seed).uniform(spec.lb, spec.ub, spec.dimension)
    assert eval_benchmark(fid, x) == eval_benchmark(fid, -x)


def test_unknown_id():
    with pytest.raises(KeyError):
        benchmark("f8")


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        eval_benchmark("f1", np.zeros(29))


def test_uppercase_id_accepted():
    assert benchmark("F3").id == "f3"

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperrel import Hypergraph, UndefinedRelativeVariance, exact_unreliability
from hyperrel.io import complete_graph, sunflower
from hyperrel.stats import (
    EstimatorRun,
    amplify,
    as_generator,
    empirical_capped_relative_variance,
    empirical_relative_variance,
    group_size_for,
    mc_disconnections,
    median_of_group_means,
    median_of_means,
    monte_carlo_unreliability,
    sample_rng,
)

TRIANGLE = complete_graph(3)


def test_estimator_run_validation():
    with pytest.raises(ValueError):
        EstimatorRun(-0.1)
    with pytest.raises(ValueError):
        EstimatorRun(0.1, samples_used=0)
    assert EstimatorRun(0.2, algorithm="x").to_dict()["algorithm"] == "x"


def test_as_generator_forms():
    g = np.random.default_rng(0)
    assert as_generator(g) == (g, None)
    gen, seed = as_generator(12)
    assert seed == 12 and gen.random() == np.random.default_rng(12).random()
    assert as_generator(None)[1] is not None
    assert sample_rng(5, 1).random() != sample_rng(5, 2).random()


@pytest.mark.parametrize("g, p", [(TRIANGLE, 0.3), (sunflower(5), 0.4), (complete_graph(5), 0.5)])
def test_monte_carlo_matches_exact(g, p):
    run = monte_carlo_unreliability(g, p, 40000, 3)
    u = exact_unreliability(g, p)
    se = np.sqrt(u * (1 - u) / 40000)
    assert abs(run.estimate - u) < 4 * se
    assert run.samples_used == 40000 and run.seed == 3


def test_monte_carlo_extremes():
    assert monte_carlo_unreliability(TRIANGLE, 0.0, 100, 1).estimate == 0.0
    assert monte_carlo_unreliability(TRIANGLE, 1.0, 100, 1).estimate == 1.0
    assert monte_carlo_unreliability(Hypergraph(3, [(0, 1)]), 0.0, 100, 1).estimate == 1.0
    assert monte_carlo_unreliability(Hypergraph(1), 0.5, 100, 1).estimate == 0.0
    with pytest.raises(ValueError):
        monte_carlo_unreliability(TRIANGLE, 0.5, 0)
    with pytest.raises(ValueError):
        monte_carlo_unreliability(TRIANGLE, 1.5, 10)


def test_monte_carlo_many_vertices():
    # a path on 70 vertices uses the union-find route
    n = 70
    path = Hypergraph(n, [(i, i + 1) for i in range(n - 1)])
    assert monte_carlo_unreliability(path, 0.0, 50, 0).estimate == 0.0
    p = 0.01
    est = monte_carlo_unreliability(path, p, 4000, 0).estimate
    u = 1 - (1 - p) ** (n - 1)
    assert abs(est - u) < 4 * np.sqrt(u * (1 - u) / 4000)


def test_monte_carlo_independent_of_workers():
    g = sunflower(6)
    runs = [monte_carlo_unreliability(g, 0.5, 100_000, 99, workers=w).estimate for w in (1, 2, 3)]
    assert runs[0] == runs[1] == runs[2]


def test_mc_disconnections_with_generator():
    rng = np.random.default_rng(4)
    hits = mc_disconnections(TRIANGLE, 0.5, 10000, rng)
    assert abs(hits / 10000 - 0.5) < 0.03


def test_median_of_group_means():
    assert median_of_group_means([1, 1, 5, 5, 100, 100], 3) == 5.0
    with pytest.raises(ValueError):
        median_of_group_means([1, 2, 3, 4], 2)
    with pytest.raises(ValueError):
        median_of_group_means([1, 2, 3, 4], 3)


def test_median_of_means_is_reproducible_across_workers():
    def source(rng):
        return rng.exponential()

    a = median_of_means(source, 5, 40, seed=8, workers=1)
    b = median_of_means(source, 5, 40, seed=8, workers=4)
    assert a == b
    with pytest.raises(ValueError):
        median_of_means(source, 4, 10, seed=1)
    with pytest.raises(ValueError):
        median_of_means(source, 3, 0, seed=1)


def test_group_size():
    assert group_size_for(0.1, 1.0) == 100
    assert group_size_for(0.1, 3.0) == 300
    with pytest.raises(ValueError):
        group_size_for(0.0, 1.0)


def test_amplify_concentrates():
    def source(rng):
        # mean 1, relative variance 1
        return rng.exponential()

    hits = 0
    for seed in range(40):
        value, draws = amplify(source, 0.1, seed=seed)
        assert draws == 900
        hits += abs(value - 1.0) <= 0.1
    assert hits >= 36


def test_relative_variance():
    x = [0.0, 2.0, 0.0, 2.0]
    assert empirical_relative_variance(x) == pytest.approx(np.var(x, ddof=1) / 1.0)
    assert empirical_capped_relative_variance([0.0, 0.0, 0.1], 1.0) == pytest.approx(np.var([0, 0, 0.1], ddof=1))
    with pytest.raises(UndefinedRelativeVariance):
        empirical_relative_variance([0.0, 0.0])
    with pytest.raises(ValueError):
        empirical_relative_variance([1.0])


@given(st.lists(st.floats(0.0, 10.0, allow_subnormal=False), min_size=2, max_size=30), st.floats(0.01, 1.0))
def test_capping_never_increases_relative_variance(xs, delta):
    if np.mean(xs) ** 2 == 0.0:
        return
    assert empirical_capped_relative_variance(xs, delta) <= empirical_relative_variance(xs) * (1 + 1e-12)

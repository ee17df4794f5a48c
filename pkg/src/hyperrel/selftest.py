"""Fast invariant checks across all modules, run by ``hyperrel selftest``."""

from __future__ import annotations

import itertools
import sys

import numpy as np

from .dnf import DnfFormula, degree_cut_dnf, is_pairwise_intersecting, klm_sample_satisfying
from .enumeration import DESK_ALG1, estimate_alg1, large_edge_split
from .exact import exact_dnf_probability, exact_unreliability
from .hypergraph import (
    Hypergraph,
    brute_force_min_cut,
    contract,
    is_connected,
    min_cut_value,
    random_contract,
)
from .io import complete_graph, parse_hypergraph, random_uniform, serialize_hypergraph, sunflower
from .revelation import DESK_ALG2, estimate_alg2
from .stats import amplify, monte_carlo_unreliability

TRIANGLE = complete_graph(3)


def _close(a, b, tol=1e-12):
    assert abs(a - b) <= tol, f"{a} != {b}"


def check_oracle_closed_forms():
    _close(exact_unreliability(Hypergraph(2, [(0, 1)]), 0.3), 0.3)
    _close(exact_unreliability(Hypergraph(3, [(0, 1), (1, 2)]), 0.5), 0.75)
    _close(exact_unreliability(TRIANGLE, 0.5), 0.5)


def check_min_cut_matches_brute_force():
    for seed in range(30):
        g = random_uniform(6, 7, 3, seed=seed)
        if is_connected(g):
            assert min_cut_value(g) == brute_force_min_cut(g), g


def check_cut_sandwich():
    for seed in range(30):
        g = random_uniform(6, 9, 3, seed=seed)
        if not is_connected(g):
            continue
        lam = min_cut_value(g)
        for p in (0.1, 0.5):
            u = exact_unreliability(g, p)
            assert p**lam - 1e-12 <= u <= g.n**2 * p**lam + 1e-12


def check_contraction_identity():
    rng = np.random.default_rng(0)
    g = sunflower(4)
    q, p = 0.5, 0.2
    # average over all contraction patterns, weighted exactly
    total = 0.0
    for pattern in itertools.product((0, 1), repeat=g.m):
        ids = [i for i, c in enumerate(pattern) if c]
        h, _ = contract(g, ids)
        weight = (1 - q) ** len(ids) * q ** (g.m - len(ids))
        total += weight * exact_unreliability(h, p / q)
    _close(total, exact_unreliability(g, p), 1e-12)
    h, _ = random_contract(g, q, rng)
    assert h.n <= g.n


def check_large_edge_split():
    for g in (sunflower(5), Hypergraph(5, [(0, 1, 2), (2, 3, 4), (0, 4)])):
        branches = large_edge_split(g, 0.2)
        _close(sum(w for _, w in branches), 1.0)
        _close(sum(w * exact_unreliability(h, 0.2) for h, w in branches), exact_unreliability(g, 0.2))


def check_degree_cut_equivalence():
    g = sunflower(5)
    ids = list(range(g.m))
    assert is_pairwise_intersecting(g, ids)
    f = degree_cut_dnf(g, ids)
    for mask in range(1 << g.m):
        alive = [g.edges[i] for i in ids if not (mask >> i) & 1]
        assert f.evaluate(mask) == (not is_connected(Hypergraph(g.n, alive)))


def check_dnf_probability():
    f = DnfFormula(2, [((0,), ()), ((1,), ())])
    _close(exact_dnf_probability(f, 0.3), 0.51)
    x = klm_sample_satisfying(f, 0.3, np.random.default_rng(1))
    assert f.evaluate(x)


def check_round_trip():
    g = random_uniform(7, 9, 3, seed=4)
    assert parse_hypergraph(serialize_hypergraph(g)) == g


def check_estimators_reproducible():
    g = TRIANGLE
    mc = [monte_carlo_unreliability(g, 0.3, 5000, 11, workers=w).estimate for w in (1, 2)]
    assert mc[0] == mc[1]
    a1 = estimate_alg1(g, 0.3, DESK_ALG1.replace(small_n_threshold=2), 5)
    assert a1.estimate == estimate_alg1(g, 0.3, DESK_ALG1.replace(small_n_threshold=2), 5).estimate
    prof = DESK_ALG2.replace(small_n_threshold=2)
    assert estimate_alg2(g, 0.3, 1e-3, prof, 5).estimate == estimate_alg2(g, 0.3, 1e-3, prof, 5).estimate


def check_alg1_close_to_oracle():
    g = sunflower(5)
    prof = DESK_ALG1.replace(small_n_threshold=2)
    value, _ = amplify(lambda r: estimate_alg1(g, 0.2, prof, r).estimate, 0.2, seed=3)
    exact = exact_unreliability(g, 0.2)
    assert abs(value - exact) <= 0.3 * exact, (value, exact)


def check_alg2_close_to_oracle():
    g = sunflower(5)
    prof = DESK_ALG2.replace(small_n_threshold=2)
    value, _ = amplify(lambda r: estimate_alg2(g, 0.2, 1e-3, prof, r).estimate, 0.2, relvar=3, seed=3)
    exact = exact_unreliability(g, 0.2)
    assert abs(value - exact) <= 0.3 * exact + 1e-3, (value, exact)


CHECKS = [
    check_oracle_closed_forms,
    check_min_cut_matches_brute_force,
    check_cut_sandwich,
    check_contraction_identity,
    check_large_edge_split,
    check_degree_cut_equivalence,
    check_dnf_probability,
    check_round_trip,
    check_estimators_reproducible,
    check_alg1_close_to_oracle,
    check_alg2_close_to_oracle,
]


def run_selftest(out=None) -> int:
    """Run every check, print one line each, and return the number of failures."""
    out = out or sys.stdout
    failures = 0
    for check in CHECKS:
        name = check.__name__.removeprefix("check_")
        try:
            check()
        except Exception as exc:  # report and keep going
            failures += 1
            print(f"FAIL  {name}: {type(exc).__name__}: {exc}", file=out)
        else:
            print(f"ok    {name}", file=out)
    print(f"{len(CHECKS) - failures}/{len(CHECKS)} checks passed", file=out)
    return failures


if __name__ == "__main__":
    sys.exit(1 if run_selftest() else 0)

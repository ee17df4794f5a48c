"""Unbiased unreliability estimator by random contraction with large-edge enumeration.

Universally small hypergraphs (every rank at most ``n/2``) are randomly
contracted at survival rate ``q = n**(-c/lambda)`` and the estimator recurses at
failure probability ``p/q``. Otherwise the edges of rank above ``n/2`` are
enumerated by the first one that survives, which either contracts a large edge
(halving the vertex count) or deletes all of them (leaving a universally small
hypergraph).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import BudgetExhausted, InvariantViolation, TooLargeForExact
from .exact import exact_unreliability
from .hypergraph import (
    Hypergraph,
    contract,
    delete_edges,
    is_connected,
    is_universally_small,
    min_cut_value,
    random_contract,
)
from .stats import EstimatorRun, as_generator, mc_disconnections

__all__ = [
    "Alg1Profile",
    "PAPER_ALG1",
    "DESK_ALG1",
    "estimate_alg1",
    "large_edge_split",
    "progress_measure",
]


def _capped(value: int, cap: int | None) -> int:
    return value if cap is None else max(1, min(value, cap))


@dataclass(frozen=True)
class Alg1Profile:
    """Constants of the estimator.

    ``mc_exponent`` is ``c``: Monte Carlo takes over once ``p**lambda >= n**-c``
    with ``n**c`` trials, and random contraction keeps edges at rate
    ``n**(-c/lambda)``. Each random contraction step draws
    ``reps_coefficient * n**reps_exponent`` samples, optionally capped.
    """

    name: str
    mc_exponent: float
    reps_coefficient: int
    reps_exponent: int
    small_n_threshold: int = 8
    max_wedges: int = 25
    reps_cap: int | None = None
    mc_trials_cap: int | None = None
    recursion_budget: int = 10**7
    check_progress: bool = True

    def __post_init__(self):
        if self.mc_exponent <= 0:
            raise ValueError("mc_exponent must be positive")
        if self.reps_coefficient < 1 or self.recursion_budget < 1:
            raise ValueError("repetitions and budget must be at least 1")

    def reps(self, n: int) -> int:
        return _capped(self.reps_coefficient * n**self.reps_exponent, self.reps_cap)

    def mc_trials(self, n: int) -> int:
        return _capped(math.ceil(n**self.mc_exponent), self.mc_trials_cap)

    def replace(self, **changes) -> "Alg1Profile":
        return replace(self, **changes)


PAPER_ALG1 = Alg1Profile("paper", mc_exponent=10, reps_coefficient=2, reps_exponent=12)
DESK_ALG1 = Alg1Profile("desk", mc_exponent=2, reps_coefficient=2, reps_exponent=4, reps_cap=24)


def progress_measure(g: Hypergraph, p: float) -> tuple[int, int, int]:
    """``(n, m, ceil(m * ln(1/p)))``; some coordinate drops in every recursive call."""
    return g.n, g.m, math.ceil(g.m * math.log(1.0 / p)) if p < 1.0 else 0


def large_edge_split(g: Hypergraph, p: float) -> list[tuple[Hypergraph, float]]:
    """Branches ``(H_i, Pr[A_i])`` by the first surviving large edge, in input order.

    Branch ``i < l`` deletes the first ``i`` large edges and contracts the next
    one, with weight ``p**i * (1-p)``; the last branch deletes all ``l`` of them,
    with weight ``p**l``.
    """
    large = [i for i, r in enumerate(g.ranks) if 2 * r > g.n]
    branches = []
    for k, idx in enumerate(large):
        without, emap = delete_edges(g, large[:k])
        h, _ = contract(without, [emap.edge_map[idx]])
        branches.append((h, p**k * (1.0 - p)))
    h_last, _ = delete_edges(g, large)
    branches.append((h_last, p ** len(large)))
    return branches


class _Alg1Run:
    def __init__(self, profile: Alg1Profile, rng: np.random.Generator):
        self.profile = profile
        self.rng = rng
        self.calls = 0
        self.samples = 0
        self.exact_leaves = 0
        self.mc_leaves = 0
        self.mc_truncated = False
        self.max_depth = 0

    def solve(self, g: Hypergraph, p: float, parent=None, depth: int = 0) -> float:
        prof = self.profile
        self.calls += 1
        if self.calls > prof.recursion_budget:
            raise BudgetExhausted(f"recursion budget of {prof.recursion_budget} calls exhausted")
        self.max_depth = max(self.max_depth, depth)
        if prof.check_progress and parent is not None:
            here = progress_measure(g, p)
            shrinks = here[0] <= parent[0] and here[1] <= parent[1]
            if not (shrinks and any(a < b for a, b in zip(here, parent))):
                raise InvariantViolation(f"no progress: {parent} -> {here}")

        if not is_connected(g):
            return 1.0
        n = g.n
        if n == 1:
            return 0.0
        lam = min_cut_value(g)
        c = prof.mc_exponent
        if lam * math.log(p) >= -c * math.log(n):
            trials = prof.mc_trials(n)
            self.mc_truncated |= trials < math.ceil(n**c)
            self.mc_leaves += 1
            self.samples += trials
            return mc_disconnections(g, p, trials, self.rng) / trials
        if n <= prof.small_n_threshold:
            try:
                value = exact_unreliability(g, p, max_wedges=prof.max_wedges)
            except TooLargeForExact:
                pass
            else:
                self.exact_leaves += 1
                self.samples += 1
                return value

        here = progress_measure(g, p)
        if is_universally_small(g):
            q = math.exp(-c * math.log(n) / lam)
            reps = prof.reps(n)
            total = 0.0
            for _ in range(reps):
                h, _ = random_contract(g, q, self.rng)
                total += self.solve(h, p / q, here, depth + 1)
            return total / reps

        return sum(w * self.solve(h, p, here, depth + 1) for h, w in large_edge_split(g, p))


def estimate_alg1(
    g: Hypergraph,
    p: float,
    profile: Alg1Profile = DESK_ALG1,
    rng: np.random.Generator | int | None = None,
) -> EstimatorRun:
    """One draw of the unbiased estimator of ``u_G(p)``.

    Under ``PAPER_ALG1`` the draw has relative variance at most 1; the desk
    profile trades that guarantee for tractable repetition counts, so combine
    draws with :func:`hyperrel.stats.amplify`.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    gen, seed = as_generator(rng)
    run = _Alg1Run(profile, gen)
    value = run.solve(g, p)
    return EstimatorRun(
        estimate=value,
        samples_used=max(1, run.samples),
        seed=seed,
        additive_bias_bound=0.0,
        recursion_calls=run.calls,
        algorithm="alg1",
        profile=profile.name,
        meta={
            "exact_leaves": run.exact_leaves,
            "mc_leaves": run.mc_leaves,
            "mc_trials_truncated": run.mc_truncated,
            "max_depth": run.max_depth,
        },
    )

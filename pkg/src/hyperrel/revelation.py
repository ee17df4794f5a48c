"""Unreliability estimator by random contraction with DNF sampling.

The recursion keeps a phase structure: at a phase node the large edges are
those of rank above ``n/2``; descendants whose vertex count stays above
``0.8`` times the phase node's inherit that edge set through the contraction
maps. Large edges pairwise intersect, so ``G_large`` disconnects exactly when
some vertex loses all its large edges, which is a DNF over large-edge
failures. Depending on ``beta = lambda - lambda_L`` the estimator either
samples ``G_large`` conditioned on disconnection and finishes with Monte Carlo
on the small edges (full revelation), or runs a conditioned random
contraction and recurses (partial revelation).

The estimate is biased low by at most ``delta``: instances with
``p**lambda < 2**(-3N)``, ``N = ceil(log2(1/delta))``, return 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .dnf import KlmSampler, degree_cut_dnf, is_pairwise_intersecting
from .errors import BudgetExhausted, InvariantViolation, TooLargeForExact
from .exact import exact_unreliability
from .hypergraph import (
    ContractionMap,
    Hypergraph,
    contract,
    degrees_in,
    is_connected,
    min_cut_value,
    random_contract,
)
from .stats import EstimatorRun, as_generator, disconnected_rows, mc_disconnections

__all__ = [
    "Alg2Profile",
    "PAPER_ALG2",
    "DESK_ALG2",
    "Alg2Context",
    "RevelationParams",
    "estimate_alg2",
    "root_context",
    "update_phase",
    "revelation_params",
    "conditioned_contraction",
    "conditioned_contractions",
    "bits_of_delta",
]


def _capped(value: int, cap: int | None) -> int:
    return value if cap is None else max(1, min(value, cap))


@dataclass(frozen=True)
class Alg2Profile:
    """Constants of the estimator.

    Random contraction in the universally small case keeps edges at rate
    ``n**(-mc_exponent/lambda)``; partial revelation keeps them at
    ``n**(-partial_exponent/beta)``. Repetition counts are
    ``coefficient * n**exponent``, optionally capped by ``reps_cap``.
    """

    name: str
    mc_exponent: float
    small_reps: tuple[int, int]
    partial_exponent: float
    partial_reps: tuple[int, int]
    full_reps: tuple[int, int] = (8, 2)
    small_n_threshold: int = 8
    max_wedges: int = 25
    reps_cap: int | None = None
    mc_trials_cap: int | None = None
    klm_inner_trials: int | None = None
    recursion_budget: int = 10**7
    check_invariants: bool = True

    def _reps(self, spec: tuple[int, int], n: int) -> int:
        coef, exp = spec
        return _capped(coef * n**exp, self.reps_cap)

    def small_reps_for(self, n: int) -> int:
        return self._reps(self.small_reps, n)

    def partial_reps_for(self, n: int) -> int:
        return self._reps(self.partial_reps, n)

    def full_reps_for(self, n: int) -> int:
        coef, exp = self.full_reps
        return coef * n**exp

    def mc_trials(self, n: int) -> int:
        return _capped(math.ceil(n**self.mc_exponent), self.mc_trials_cap)

    def replace(self, **changes) -> "Alg2Profile":
        return replace(self, **changes)


PAPER_ALG2 = Alg2Profile(
    "paper", mc_exponent=10, small_reps=(16, 12), partial_exponent=700, partial_reps=(32, 704)
)
DESK_ALG2 = Alg2Profile(
    "desk", mc_exponent=2, small_reps=(16, 4), partial_exponent=4, partial_reps=(32, 4), reps_cap=24
)


def bits_of_delta(delta: float) -> int:
    """``N = ceil(log2(1/delta))``."""
    return math.ceil(-math.log2(delta) - 1e-12)


@dataclass(frozen=True)
class Alg2Context:
    """Recursion state handed from a node to its children."""

    p: float
    delta: float
    bits: int
    phase_n: int
    large_ids: frozenset[int]
    gamma: int | None = None
    depth: int = 0
    phase_index: int = 0


@dataclass(frozen=True)
class RevelationParams:
    lam: int
    lam_large: int
    num_large: int

    @property
    def beta(self) -> int:
        return self.lam - self.lam_large

    @property
    def gamma(self) -> int:
        return self.num_large - self.lam_large


def _large_by_rank(g: Hypergraph) -> frozenset[int]:
    return frozenset(i for i, r in enumerate(g.ranks) if 2 * r > g.n)


def root_context(g: Hypergraph, p: float, delta: float) -> Alg2Context:
    return Alg2Context(p, delta, bits_of_delta(delta), g.n, _large_by_rank(g))


def update_phase(ctx: Alg2Context, h: Hypergraph, cmap: ContractionMap, p: float) -> Alg2Context:
    """Context of a child ``h`` obtained from the current node through ``cmap``.

    The child starts a new phase when its vertex count is at most ``0.8`` times
    the phase node's; otherwise it inherits the large edges mapped through the
    contraction, all of which must still be present.
    """
    if 5 * h.n <= 4 * ctx.phase_n:
        return Alg2Context(
            p, ctx.delta, ctx.bits, h.n, _large_by_rank(h), None, ctx.depth + 1, ctx.phase_index + 1
        )
    mapped = frozenset(cmap.edge_map[i] for i in ctx.large_ids)
    if -1 in mapped:
        raise InvariantViolation("a large edge collapsed without starting a new phase")
    return Alg2Context(
        p, ctx.delta, ctx.bits, ctx.phase_n, mapped, ctx.gamma, ctx.depth + 1, ctx.phase_index
    )


def revelation_params(g: Hypergraph, lam: int, large_ids) -> RevelationParams:
    """``lambda_L`` is the minimum number of large edges at any vertex."""
    deg = degrees_in(g, large_ids)
    return RevelationParams(lam, min(deg), len(large_ids))


def conditioned_contractions(
    g: Hypergraph,
    large: list[int],
    sampler: KlmSampler,
    q: float,
    rng: np.random.Generator,
    count: int,
) -> np.ndarray:
    """``count`` draws of which edges ``G(q)`` contracts, conditioned on the large edges
    not merging everything, as a boolean ``(count, m)`` matrix.

    The sampler draws which large edges stay uncontracted (a satisfying
    assignment of the degree-cut formula at rate ``q``); every other edge is
    contracted independently with probability ``1-q``.
    """
    chosen = rng.random((count, g.m)) >= q
    failed = np.array(sampler.sample_masks(rng, count), dtype=object)
    for j, i in enumerate(large):
        chosen[:, i] = [not (x >> j) & 1 for x in failed]
    return chosen


def conditioned_contraction(
    g: Hypergraph,
    large: list[int],
    sampler: KlmSampler,
    q: float,
    rng: np.random.Generator,
) -> list[int]:
    """Edge ids contracted by one conditioned draw (see :func:`conditioned_contractions`)."""
    return np.flatnonzero(conditioned_contractions(g, large, sampler, q, rng, 1)[0]).tolist()


@dataclass
class _Stats:
    calls: int = 0
    samples: int = 0
    exact_leaves: int = 0
    mc_leaves: int = 0
    zero_leaves: int = 0
    full_revelations: int = 0
    partial_revelations: int = 0
    small_steps: int = 0
    q_clamped: int = 0
    max_depth: int = 0
    phases: int = 0


class _Alg2Run:
    def __init__(self, profile: Alg2Profile, rng: np.random.Generator):
        self.profile = profile
        self.rng = rng
        self.stats = _Stats()

    def _check_large(self, g: Hypergraph, ctx: Alg2Context, large: list[int]) -> None:
        if not is_pairwise_intersecting(g, large):
            raise InvariantViolation("large edges are not pairwise intersecting")
        n = g.n
        for i, r in enumerate(g.ranks):
            if i in ctx.large_ids:
                if 10 * r < 3 * n:
                    raise InvariantViolation(f"large edge {i} has rank {r} < 0.3 n (n={n})")
            elif 10 * r > 7 * n:
                raise InvariantViolation(f"small edge {i} has rank {r} > 0.7 n (n={n})")

    def solve(self, g: Hypergraph, ctx: Alg2Context) -> float:
        prof = self.profile
        st = self.stats
        st.calls += 1
        if st.calls > prof.recursion_budget:
            raise BudgetExhausted(f"recursion budget of {prof.recursion_budget} calls exhausted")
        st.max_depth = max(st.max_depth, ctx.depth)
        st.phases = max(st.phases, ctx.phase_index + 1)
        p = ctx.p
        n = g.n

        if p >= 1.0:
            # every edge fails
            return float(n >= 2)
        if not is_connected(g):
            return 1.0
        if n == 1:
            return 0.0
        if n <= prof.small_n_threshold:
            try:
                value = exact_unreliability(g, p, max_wedges=prof.max_wedges)
            except TooLargeForExact:
                pass
            else:
                st.exact_leaves += 1
                st.samples += 1
                return value

        lam = min_cut_value(g)
        log_p_lam = lam * math.log(p)
        if log_p_lam < -3 * ctx.bits * math.log(2.0):
            st.zero_leaves += 1
            return 0.0
        c = prof.mc_exponent
        if log_p_lam >= -c * math.log(n):
            trials = prof.mc_trials(n)
            st.mc_leaves += 1
            st.samples += trials
            return mc_disconnections(g, p, trials, self.rng) / trials

        large = sorted(ctx.large_ids)
        if prof.check_invariants:
            self._check_large(g, ctx, large)
        if not large:
            return self._universally_small(g, ctx, lam)

        params = revelation_params(g, lam, large)
        if prof.check_invariants and ctx.gamma is not None and params.gamma > ctx.gamma:
            raise InvariantViolation(f"gamma grew within a phase: {ctx.gamma} -> {params.gamma}")
        ctx = replace(ctx, gamma=params.gamma)
        if params.beta * ctx.bits < lam:
            return self._full_revelation(g, ctx, large)
        return self._partial_revelation(g, ctx, large, params)

    def _universally_small(self, g: Hypergraph, ctx: Alg2Context, lam: int) -> float:
        n = g.n
        q = math.exp(-self.profile.mc_exponent * math.log(n) / lam)
        if q <= ctx.p:
            raise InvariantViolation(f"contraction rate q={q} not above p={ctx.p}")
        self.stats.small_steps += 1
        reps = self.profile.small_reps_for(n)
        total = 0.0
        for _ in range(reps):
            h, cmap = random_contract(g, q, self.rng)
            total += self.solve(h, update_phase(ctx, h, cmap, ctx.p / q))
        return total / reps

    def _full_revelation(self, g: Hypergraph, ctx: Alg2Context, large: list[int]) -> float:
        self.stats.full_revelations += 1
        p = ctx.p
        sampler = KlmSampler(degree_cut_dnf(g, large, check=False), p)
        reps = self.profile.full_reps_for(g.n)
        chosen = conditioned_contractions(g, large, sampler, p, self.rng, reps)
        hits = int(np.count_nonzero(disconnected_rows(g, chosen)))
        self.stats.samples += reps
        z = sampler.estimate(self.rng, self.profile.klm_inner_trials)
        return hits / reps * z

    def _partial_revelation(
        self, g: Hypergraph, ctx: Alg2Context, large: list[int], params: RevelationParams
    ) -> float:
        self.stats.partial_revelations += 1
        p = ctx.p
        n = g.n
        q = math.exp(-self.profile.partial_exponent * math.log(n) / params.beta)
        if q < p:
            q = p
            self.stats.q_clamped += 1
        sampler = KlmSampler(degree_cut_dnf(g, large, check=False), q)
        reps = self.profile.partial_reps_for(n)
        total = 0.0
        for row in conditioned_contractions(g, large, sampler, q, self.rng, reps):
            h, cmap = contract(g, np.flatnonzero(row).tolist())
            total += self.solve(h, update_phase(ctx, h, cmap, p / q))
        z = sampler.estimate(self.rng, self.profile.klm_inner_trials)
        return total / reps * z


def estimate_alg2(
    g: Hypergraph,
    p: float,
    delta: float,
    profile: Alg2Profile = DESK_ALG2,
    rng: np.random.Generator | int | None = None,
) -> EstimatorRun:
    """One draw of the estimator of ``u_G(p)`` with one-sided bias at most ``delta``.

    When ``delta >= 1/n`` the draw is a plain Monte Carlo average of
    ``ceil(1/delta)`` trials, whose ``delta``-capped relative variance is at
    most 1.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    gen, seed = as_generator(rng)
    meta: dict = {}
    if delta * g.n >= 1.0:
        trials = math.ceil(1.0 / delta)
        value = mc_disconnections(g, p, trials, gen) / trials
        return EstimatorRun(
            value, trials, seed, delta, 1, "alg2", profile.name, {"monte_carlo_shortcut": True}
        )
    run = _Alg2Run(profile, gen)
    value = run.solve(g, root_context(g, p, delta))
    st = run.stats
    meta.update(
        exact_leaves=st.exact_leaves,
        mc_leaves=st.mc_leaves,
        zero_leaves=st.zero_leaves,
        full_revelations=st.full_revelations,
        partial_revelations=st.partial_revelations,
        small_steps=st.small_steps,
        q_clamped=st.q_clamped,
        max_depth=st.max_depth,
        phases=st.phases,
    )
    return EstimatorRun(
        estimate=value,
        samples_used=max(1, st.samples),
        seed=seed,
        additive_bias_bound=delta,
        recursion_calls=st.calls,
        algorithm="alg2",
        profile=profile.name,
        meta=meta,
    )

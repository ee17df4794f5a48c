"""DNF formulas over edge-failure variables and Karp-Luby-Madras sampling.

A variable is True when the corresponding hyperedge fails. The degree-cut
formula of a pairwise-intersecting edge set has one clause per vertex: the
conjunction of the failures of the edges at that vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import InvariantViolation, NotPairwiseIntersecting, UnsatisfiableFormula
from .hypergraph import Hypergraph

__all__ = [
    "DnfFormula",
    "ClauseWeights",
    "clause_weights",
    "KlmSampler",
    "klm_sample_satisfying",
    "klm_unbiased_estimate",
    "degree_cut_dnf",
    "is_pairwise_intersecting",
    "REJECTION_LIMIT_PER_CLAUSE",
]

REJECTION_LIMIT_PER_CLAUSE = 10_000
_PACKED_VARS = 62


@dataclass(frozen=True)
class DnfFormula:
    """``num_vars`` Boolean variables and clauses of (positive ids, negative ids).

    A formula with no clauses is unsatisfiable; a clause with no literals is
    always satisfied.
    """

    num_vars: int
    clauses: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = ()

    def __post_init__(self):
        norm = []
        for pos, neg in self.clauses:
            pos = tuple(sorted(int(i) for i in pos))
            neg = tuple(sorted(int(i) for i in neg))
            lits = pos + neg
            if len(set(lits)) != len(lits):
                raise ValueError(f"variable repeated within clause {pos} / {neg}")
            if any(not 0 <= i < self.num_vars for i in lits):
                raise ValueError(f"literal out of range in clause {pos} / {neg}")
            norm.append((pos, neg))
        object.__setattr__(self, "clauses", tuple(norm))

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    @cached_property
    def masks(self) -> tuple[tuple[int, int], ...]:
        """Each clause as (positive bitmask, negative bitmask)."""
        return tuple(
            (sum(1 << i for i in pos), sum(1 << i for i in neg)) for pos, neg in self.clauses
        )

    def satisfied_count(self, assignment: Sequence[bool] | int) -> int:
        """Number of clauses satisfied by an assignment (bool sequence or bitmask)."""
        x = assignment if isinstance(assignment, int) else _pack(assignment)
        return sum(1 for pm, nm in self.masks if x & pm == pm and not x & nm)

    def evaluate(self, assignment: Sequence[bool] | int) -> bool:
        return self.satisfied_count(assignment) > 0


def _pack(assignment: Sequence[bool]) -> int:
    x = 0
    for i, val in enumerate(assignment):
        if val:
            x |= 1 << i
    return x


def _unpack(x: int, n: int) -> np.ndarray:
    return np.array([(x >> i) & 1 for i in range(n)], dtype=bool)


@dataclass(frozen=True)
class ClauseWeights:
    u: np.ndarray
    total: float


def clause_weights(f: DnfFormula, p: float) -> ClauseWeights:
    """Satisfaction probability ``p**a_i * (1-p)**b_i`` of each clause and their sum."""
    u = np.array([p ** len(pos) * (1.0 - p) ** len(neg) for pos, neg in f.clauses], dtype=float)
    return ClauseWeights(u, float(u.sum()))


class KlmSampler:
    """Clause-proportional proposals with ``1/f(x)`` acceptance.

    One proposal picks clause ``i`` with probability ``u_i / U``, forces its
    literals, draws the remaining variables independently and accepts with
    probability one over the number of satisfied clauses. Accepted assignments
    follow the product distribution conditioned on the formula being true, and
    the acceptance probability of a single proposal is ``u_F(p) / U``.
    """

    def __init__(self, f: DnfFormula, p: float):
        if not 0.0 < p < 1.0:
            raise ValueError(f"p must lie in (0, 1), got {p}")
        self.formula = f
        self.p = p
        self.weights = clause_weights(f, p)
        self._cum = np.cumsum(self.weights.u)
        self.proposals = 0
        self.acceptances = 0

    @property
    def total_weight(self) -> float:
        return self.weights.total

    def _propose(self, rng: np.random.Generator) -> tuple[int, bool]:
        f = self.formula
        i = int(np.searchsorted(self._cum, rng.random() * self._cum[-1], side="right"))
        i = min(i, f.num_clauses - 1)
        x = 0
        for j in np.flatnonzero(rng.random(f.num_vars) < self.p).tolist():
            x |= 1 << j
        pm, nm = f.masks[i]
        x = (x | pm) & ~nm
        hits = f.satisfied_count(x)
        self.proposals += 1
        accepted = rng.random() * hits < 1.0
        self.acceptances += accepted
        return x, accepted

    @cached_property
    def _packed(self) -> tuple[np.ndarray, np.ndarray] | None:
        # clause masks as int64 arrays; None when assignments do not fit in 62 bits
        if self.formula.num_vars > _PACKED_VARS:
            return None
        pm, nm = zip(*self.formula.masks)
        return np.array(pm, dtype=np.int64), np.array(nm, dtype=np.int64)

    def _propose_batch(self, rng: np.random.Generator, k: int) -> tuple[np.ndarray, np.ndarray]:
        """``k`` independent proposals as packed assignments and acceptance flags."""
        f = self.formula
        pm, nm = self._packed
        idx = np.searchsorted(self._cum, rng.random(k) * self._cum[-1], side="right")
        np.minimum(idx, f.num_clauses - 1, out=idx)
        bits = rng.random((k, f.num_vars)) < self.p
        x = bits.astype(np.int64) @ (np.int64(1) << np.arange(f.num_vars, dtype=np.int64))
        x = (x | pm[idx]) & ~nm[idx]
        sat = ((x[:, None] & pm) == pm) & ((x[:, None] & nm) == 0)
        accepted = rng.random(k) * sat.sum(axis=1) < 1.0
        self.proposals += k
        self.acceptances += int(accepted.sum())
        return x, accepted

    def sample_masks(self, rng: np.random.Generator, count: int) -> list[int]:
        """``count`` independent satisfying assignments as bitmasks."""
        if self.weights.total <= 0.0:
            raise UnsatisfiableFormula("formula has no satisfying mass")
        limit = REJECTION_LIMIT_PER_CLAUSE * self.formula.num_clauses
        if self._packed is None:
            return [self._sample_scalar(rng, limit) for _ in range(count)]
        out: list[int] = []
        rejected = 0  # proposals since the last acceptance
        batch = max(16, 2 * count)
        while len(out) < count:
            x, ok = self._propose_batch(rng, batch)
            hits = np.flatnonzero(ok)
            if not hits.size:
                rejected += batch
            elif rejected + int(hits[0]) >= limit:
                rejected = limit
            else:
                out.extend(x[hits[: count - len(out)]].tolist())
                rejected = batch - 1 - int(hits[-1])
            if rejected >= limit:
                raise InvariantViolation(f"{limit} consecutive rejections in conditional sampling")
        return out

    def _sample_scalar(self, rng: np.random.Generator, limit: int) -> int:
        for _ in range(limit):
            x, ok = self._propose(rng)
            if ok:
                return x
        raise InvariantViolation(f"{limit} consecutive rejections in conditional sampling")

    def sample_mask(self, rng: np.random.Generator) -> int:
        """Draw one satisfying assignment as a bitmask over the variables."""
        if self.weights.total <= 0.0:
            raise UnsatisfiableFormula("formula has no satisfying mass")
        return self._sample_scalar(rng, REJECTION_LIMIT_PER_CLAUSE * self.formula.num_clauses)

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        return _unpack(self.sample_mask(rng), self.formula.num_vars)

    def single_shot(self, rng: np.random.Generator) -> float:
        """``U`` if one proposal is accepted, else 0; unbiased for ``u_F(p)``."""
        if self.weights.total <= 0.0:
            return 0.0
        _, ok = self._propose(rng)
        return self.weights.total if ok else 0.0

    def estimate(self, rng: np.random.Generator, inner_trials: int | None = None) -> float:
        """Average of ``inner_trials`` single shots (default: one per clause)."""
        if self.weights.total <= 0.0:
            return 0.0
        trials = self.formula.num_clauses if inner_trials is None else inner_trials
        if trials < 1:
            raise ValueError("inner_trials must be at least 1")
        if self._packed is None:
            return sum(self.single_shot(rng) for _ in range(trials)) / trials
        _, ok = self._propose_batch(rng, trials)
        return self.weights.total * int(ok.sum()) / trials


def klm_sample_satisfying(f: DnfFormula, p: float, rng: np.random.Generator) -> np.ndarray:
    """One assignment drawn from the product measure conditioned on ``f``."""
    return KlmSampler(f, p).sample(rng)


def klm_unbiased_estimate(
    f: DnfFormula, p: float, inner_trials: int | None, rng: np.random.Generator
) -> float:
    """Unbiased estimate of ``u_F(p)``; ``inner_trials=None`` uses the clause count."""
    if not f.clauses:
        return 0.0
    return KlmSampler(f, p).estimate(rng, inner_trials)


def is_pairwise_intersecting(g: Hypergraph, edge_ids: Sequence[int]) -> bool:
    masks = [g.masks[i] for i in edge_ids]
    return all(masks[a] & masks[b] for a in range(len(masks)) for b in range(a))


def degree_cut_dnf(g: Hypergraph, large_ids: Sequence[int], *, check: bool = True) -> DnfFormula:
    """Formula that is true iff the edges ``large_ids`` leave ``g`` disconnected.

    Variable ``j`` is the failure of edge ``large_ids[j]``; the clause of vertex
    ``v`` requires every listed edge at ``v`` to fail. Only valid when the
    listed edges pairwise intersect, which ``check`` verifies.
    """
    large_ids = list(large_ids)
    if check and not is_pairwise_intersecting(g, large_ids):
        raise NotPairwiseIntersecting("degree-cut formula needs pairwise intersecting edges")
    at = [[] for _ in range(g.n)]
    for j, i in enumerate(large_ids):
        for v in g.edges[i]:
            at[v].append(j)
    return DnfFormula(len(large_ids), tuple((tuple(js), ()) for js in at))

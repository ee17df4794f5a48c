"""Exact unreliability and exact DNF probability for small instances.

Two independent routes compute ``u_G(p)``:

* ``"subsets"`` enumerates every failure pattern of the merged (weighted)
  hyperedges, a weighted edge of multiplicity ``w`` failing with probability
  ``p**w``, and sums the probability of the disconnected patterns.
* ``"partition"`` sums, over vertex sets ``T`` containing vertex 0, the
  probability that ``T`` is exactly the component of vertex 0. This costs
  ``O(3^n)`` instead of ``O(2^k)`` and is the default for small ``n``.

The test-suite checks the two against each other.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .dnf import DnfFormula
from .errors import TooLargeForExact
from .hypergraph import Hypergraph, is_connected

__all__ = [
    "WeightedHypergraph",
    "merge_parallel",
    "exact_unreliability",
    "exact_dnf_probability",
    "DEFAULT_MAX_WEDGES",
]

DEFAULT_MAX_WEDGES = 25
_PARTITION_MAX_N = 12
_SUBSET_CHUNK_BITS = 16


@dataclass(frozen=True)
class WeightedHypergraph:
    n: int
    wedges: tuple[tuple[tuple[int, ...], int], ...]

    @property
    def total_multiplicity(self) -> int:
        return sum(w for _, w in self.wedges)


def merge_parallel(g: Hypergraph) -> WeightedHypergraph:
    """Collapse identical edges into one edge carrying their multiplicity.

    Wedges are listed in order of first appearance.
    """
    counts = Counter(g.edges)
    return WeightedHypergraph(g.n, tuple(counts.items()))


def exact_unreliability(
    g: Hypergraph,
    p: float,
    *,
    max_wedges: int = DEFAULT_MAX_WEDGES,
    method: str = "auto",
) -> float:
    """Probability that ``g`` disconnects when each edge fails w.p. ``p``.

    Raises ``TooLargeForExact`` when ``g`` has more than ``max_wedges``
    distinct edges after merging parallel copies.

    >>> round(exact_unreliability(Hypergraph(3, [(0, 1), (1, 2), (0, 2)]), 0.5), 12)
    0.5
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    wg = merge_parallel(g)
    if len(wg.wedges) > max_wedges:
        raise TooLargeForExact(
            f"{len(wg.wedges)} distinct hyperedges exceed the exact cap of {max_wedges}"
        )
    if method == "auto":
        method = "partition" if g.n <= _PARTITION_MAX_N else "subsets"
    if method not in ("partition", "subsets"):
        raise ValueError(f"unknown method {method!r}")
    if g.n == 1:
        return 0.0
    if p == 0.0:
        return 0.0 if is_connected(g) else 1.0
    if p == 1.0:
        return 1.0
    return _exact_cached(g.n, wg.wedges, float(p), method)


@lru_cache(maxsize=1 << 16)
def _exact_cached(n, wedges, p, method):
    if method == "partition":
        return _by_partition(n, wedges, p)
    return _by_subsets(n, wedges, p)


def _by_partition(n: int, wedges, p: float) -> float:
    full = (1 << n) - 1
    log_p = math.log(p)
    subsets = np.arange(1 << n, dtype=np.int64)
    # log of the probability that every edge inside a vertex set fails
    log_inside = np.zeros(1 << n)
    for edge, w in wedges:
        mask = 0
        for v in edge:
            mask |= 1 << v
        log_inside[(subsets & mask) == mask] += w * log_p
    log_inside = log_inside.tolist()

    # disc[S]: probability that the edges inside S leave S disconnected
    disc = [0.0] * (1 << n)
    for s in range(1, full + 1):
        low = s & -s
        rest = s ^ low
        if rest == 0:
            continue
        total = 0.0
        ls = log_inside[s]
        sub = (rest - 1) & rest
        while True:
            t = low | sub
            # T is the component of low; every edge of S meeting both T and S\T fails
            total += (1.0 - disc[t]) * math.exp(ls - log_inside[t] - log_inside[s ^ t])
            if sub == 0:
                break
            sub = (sub - 1) & rest
        disc[s] = total
    return disc[full]


def _by_subsets(n: int, wedges, p: float) -> float:
    full = (1 << n) - 1
    k = len(wedges)
    masks = []
    fail = []
    for edge, w in wedges:
        mask = 0
        for v in edge:
            mask |= 1 << v
        masks.append(mask)
        fail.append(p**w)
    low_bits = min(k, _SUBSET_CHUNK_BITS)
    idx = np.arange(1 << low_bits, dtype=np.int64)
    low_prob = np.ones(1)
    for j in range(low_bits):
        # bit j set means wedge j survives
        low_prob = np.concatenate([low_prob * fail[j], low_prob * (1.0 - fail[j])])
    low_surv = [((idx >> j) & 1).astype(bool) for j in range(low_bits)]

    total = 0.0
    for high in range(1 << (k - low_bits)):
        weight = 1.0
        high_masks = []
        for j in range(low_bits, k):
            if (high >> (j - low_bits)) & 1:
                weight *= 1.0 - fail[j]
                high_masks.append(masks[j])
            else:
                weight *= fail[j]
        if weight == 0.0:
            continue
        reach = np.ones(1 << low_bits, dtype=np.int64)
        while True:
            before = reach.copy()
            for mk in high_masks:
                hit = (reach & mk) != 0
                reach[hit] |= mk
            for j in range(low_bits):
                hit = low_surv[j] & ((reach & masks[j]) != 0)
                reach[hit] |= masks[j]
            if np.array_equal(before, reach):
                break
        total += weight * float(low_prob[reach != full].sum())
    return total


def exact_dnf_probability(f: DnfFormula, p: float, *, max_vars: int = 20) -> float:
    """Probability that ``f`` is satisfied when each variable is True w.p. ``p``.

    >>> round(exact_dnf_probability(DnfFormula(2, [((0,), ()), ((1,), ())]), 0.3), 12)
    0.51
    """
    if f.num_vars > max_vars:
        raise TooLargeForExact(f"{f.num_vars} variables exceed the enumeration cap {max_vars}")
    if not f.clauses:
        return 0.0
    x = np.arange(1 << f.num_vars, dtype=np.int64)
    sat = np.zeros(x.shape, dtype=bool)
    for pos, neg in f.clauses:
        pm = sum(1 << i for i in pos)
        nm = sum(1 << i for i in neg)
        sat |= ((x & pm) == pm) & ((x & nm) == 0)
    ones = np.bitwise_count(x[sat]).astype(np.int64)
    probs = np.power(p, ones) * np.power(1.0 - p, f.num_vars - ones)
    return float(probs.sum())

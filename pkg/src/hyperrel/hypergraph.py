"""Hypergraph representation, connectivity, contraction and minimum cuts.

Vertices are the integers ``0..n-1``. Each hyperedge is a strictly increasing
tuple of vertex ids of rank at least two; parallel edges are kept as separate
entries because every edge fails independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import AlreadyDisconnected

__all__ = [
    "Hypergraph",
    "ContractionMap",
    "is_connected",
    "num_components",
    "min_cut_value",
    "brute_force_min_cut",
    "contract",
    "delete_edges",
    "random_contract",
    "max_rank",
    "degrees_in",
    "degree_cut",
    "is_universally_small",
]


@dataclass(frozen=True)
class Hypergraph:
    """An unweighted hypergraph on vertices ``0..n-1``.

    Edges are normalised on construction: sorted, checked for duplicate or
    out-of-range ids, and rank-1 edges are dropped (they never cross a cut).
    The number of dropped edges is kept in ``dropped_singletons``.

    >>> Hypergraph(3, [(1, 0), (2,), (1, 2)]).edges
    ((0, 1), (1, 2))
    """

    n: int
    edges: tuple[tuple[int, ...], ...] = ()
    dropped_singletons: int = field(default=0, compare=False)

    def __post_init__(self):
        n = int(self.n)
        if n < 1:
            raise ValueError(f"vertex count must be positive, got {n}")
        kept = []
        dropped = 0
        for raw in self.edges:
            e = tuple(sorted(int(v) for v in raw))
            if not e:
                raise ValueError("empty hyperedge")
            if e[0] < 0 or e[-1] >= n:
                raise ValueError(f"vertex id out of range in edge {e} (n={n})")
            if any(a == b for a, b in zip(e, e[1:])):
                raise ValueError(f"duplicate vertex in edge {e}")
            if len(e) == 1:
                dropped += 1
                continue
            kept.append(e)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(kept))
        object.__setattr__(self, "dropped_singletons", self.dropped_singletons + dropped)

    @classmethod
    def _trusted(cls, n: int, edges: tuple[tuple[int, ...], ...]) -> "Hypergraph":
        # Skips validation; callers guarantee canonical edges of rank >= 2.
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "edges", edges)
        object.__setattr__(obj, "dropped_singletons", 0)
        return obj

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Edges as integer bitmasks over the vertex set."""
        out = []
        for e in self.edges:
            mask = 0
            for v in e:
                mask |= 1 << v
            out.append(mask)
        return tuple(out)

    @cached_property
    def ranks(self) -> tuple[int, ...]:
        return tuple(len(e) for e in self.edges)

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, m={self.m}, edges={list(self.edges)})"


@dataclass(frozen=True)
class ContractionMap:
    """Result bookkeeping of a contraction.

    ``vertex_map[v]`` is the supervertex of original vertex ``v``; supervertices
    are numbered by the smallest original vertex they contain. ``edge_map[i]``
    is the index of edge ``i`` in the contracted hypergraph, or -1 if the edge
    was contracted to a single supervertex (or deleted).
    """

    vertex_map: tuple[int, ...]
    n_new: int
    edge_map: tuple[int, ...]

    @classmethod
    def identity(cls, g: Hypergraph) -> "ContractionMap":
        return cls(tuple(range(g.n)), g.n, tuple(range(g.m)))


def _reach_from_zero(n: int, masks: Iterable[int]) -> int:
    masks = [mk for mk in masks]
    reach = 1
    changed = True
    while changed:
        changed = False
        rest = []
        for mk in masks:
            if mk & reach:
                if mk & ~reach:
                    reach |= mk
                    changed = True
            else:
                rest.append(mk)
        masks = rest
    return reach


def is_connected(g: Hypergraph) -> bool:
    """True iff every vertex is reachable from vertex 0 through hyperedges."""
    if g.n == 1:
        return True
    return _reach_from_zero(g.n, g.masks) == (1 << g.n) - 1


def _find(parent: list[int], x: int) -> int:
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def _union_edges(n: int, edges: Iterable[Sequence[int]]) -> list[int]:
    parent = list(range(n))
    for e in edges:
        r = _find(parent, e[0])
        for v in e[1:]:
            rv = _find(parent, v)
            if rv != r:
                if rv < r:
                    parent[r] = rv
                    r = rv
                else:
                    parent[rv] = r
    return parent


def num_components(g: Hypergraph, edge_ids: Iterable[int] | None = None) -> int:
    """Number of connected components using only ``edge_ids`` (default: all)."""
    edges = g.edges if edge_ids is None else [g.edges[i] for i in edge_ids]
    parent = _union_edges(g.n, edges)
    return sum(1 for v in range(g.n) if _find(parent, v) == v)


def min_cut_value(g: Hypergraph) -> int:
    """Exact minimum cut of a connected hypergraph with at least two vertices.

    Uses the tight (maximum adjacency) vertex ordering: a vertex's key counts
    the edges containing it whose other vertices are all already ordered. The
    last vertex of each ordering gives a cut-of-the-phase (its degree); the last
    two vertices are then merged.

    >>> min_cut_value(Hypergraph(3, [(0, 1, 2)]))
    1
    """
    if g.n < 2:
        raise ValueError("minimum cut needs at least two vertices")
    if not is_connected(g):
        raise AlreadyDisconnected("hypergraph is already disconnected")

    edges = [set(e) for e in g.edges]
    alive = list(range(g.n))
    best = g.m
    while len(alive) > 1:
        inc: dict[int, list[int]] = {v: [] for v in alive}
        for j, e in enumerate(edges):
            if len(e) >= 2:
                for v in e:
                    inc[v].append(j)
        outside = [len(e) for e in edges]
        key = dict.fromkeys(alive, 0)
        in_a: set[int] = set()
        order = []
        remaining = set(alive)
        while remaining:
            v = max(remaining, key=lambda u: (key[u], -u))
            remaining.discard(v)
            in_a.add(v)
            order.append(v)
            for j in inc[v]:
                outside[j] -= 1
                if outside[j] == 1:
                    for w in edges[j]:
                        if w not in in_a:
                            key[w] += 1
                            break
        s, t = order[-2], order[-1]
        best = min(best, len(inc[t]))
        if best == 0:
            break
        for j in inc[t]:
            edges[j].discard(t)
            edges[j].add(s)
        alive.remove(t)
    return best


def brute_force_min_cut(g: Hypergraph) -> int:
    """Minimum over all vertex bipartitions of the number of crossing edges."""
    if g.n < 2:
        raise ValueError("minimum cut needs at least two vertices")
    if g.n > 24:
        raise ValueError("brute force limited to n <= 24")
    full = (1 << g.n) - 1
    # every bipartition has exactly one side containing vertex n-1; enumerate the other
    sides = np.arange(1, 1 << (g.n - 1), dtype=np.int64)
    if g.m == 0:
        return 0
    masks = np.array(g.masks, dtype=np.int64)
    inside = (sides[:, None] & masks[None, :]) != 0
    outside = ((full ^ sides)[:, None] & masks[None, :]) != 0
    return int((inside & outside).sum(axis=1).min())


def _relabel(n: int, parent: list[int]) -> tuple[list[int], int]:
    label = [-1] * n
    vmap = [0] * n
    count = 0
    for v in range(n):
        r = _find(parent, v)
        if label[r] < 0:
            label[r] = count
            count += 1
        vmap[v] = label[r]
    return vmap, count


def contract(g: Hypergraph, edge_ids: Iterable[int]) -> tuple[Hypergraph, ContractionMap]:
    """Contract the given edges, returning ``G/F`` and its contraction map.

    Surviving edges are mapped element-wise; edges whose image is a single
    supervertex disappear. Supervertices are numbered by the smallest original
    vertex they contain, so the result does not depend on the order of ``F``.
    """
    ids = list(edge_ids)
    if not ids:
        return g, ContractionMap.identity(g)
    parent = _union_edges(g.n, (g.edges[i] for i in ids))
    vmap, n_new = _relabel(g.n, parent)
    new_edges = []
    emap = []
    for e in g.edges:
        image = sorted({vmap[v] for v in e})
        if len(image) >= 2:
            emap.append(len(new_edges))
            new_edges.append(tuple(image))
        else:
            emap.append(-1)
    h = Hypergraph._trusted(n_new, tuple(new_edges))
    return h, ContractionMap(tuple(vmap), n_new, tuple(emap))


def delete_edges(g: Hypergraph, edge_ids: Iterable[int]) -> tuple[Hypergraph, ContractionMap]:
    """``G - F``: remove the given edges, keeping every vertex."""
    gone = set(edge_ids)
    emap = []
    kept = []
    for i, e in enumerate(g.edges):
        if i in gone:
            emap.append(-1)
        else:
            emap.append(len(kept))
            kept.append(e)
    h = Hypergraph._trusted(g.n, tuple(kept))
    return h, ContractionMap(tuple(range(g.n)), g.n, tuple(emap))


def random_contract(
    g: Hypergraph, q: float, rng: np.random.Generator
) -> tuple[Hypergraph, ContractionMap]:
    """Sample ``H ~ G(q)``: contract each edge independently with probability ``1-q``."""
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must lie in [0, 1], got {q}")
    chosen = np.flatnonzero(rng.random(g.m) >= q)
    return contract(g, chosen.tolist())


def max_rank(g: Hypergraph) -> int:
    """Largest edge rank, 0 for an edgeless hypergraph."""
    return max(g.ranks, default=0)


def degrees_in(g: Hypergraph, edge_ids: Iterable[int] | None = None) -> list[int]:
    """Per-vertex count of incident edges among ``edge_ids`` (default: all)."""
    deg = [0] * g.n
    ids = range(g.m) if edge_ids is None else edge_ids
    for i in ids:
        for v in g.edges[i]:
            deg[v] += 1
    return deg


def degree_cut(g: Hypergraph, v: int) -> list[int]:
    """Indices of the edges containing ``v``."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    return [i for i, e in enumerate(g.edges) if v in e]


def is_universally_small(g: Hypergraph) -> bool:
    """True iff every edge has rank at most ``n/2``."""
    return 2 * max_rank(g) <= g.n

"""hMETIS-style hypergraph files, instance generators and JSON run reports.

File format: optional ``%`` comment lines, a header ``m n`` (edge count, vertex
count), then ``m`` lines of 1-indexed vertex ids separated by spaces or tabs.
"""

from __future__ import annotations

import json
import re
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from .errors import ParseError
from .hypergraph import Hypergraph, is_connected

__all__ = [
    "parse_hypergraph",
    "serialize_hypergraph",
    "read_hypergraph",
    "write_hypergraph",
    "InstanceSpec",
    "parse_instance_spec",
    "generate",
    "complete_graph",
    "sunflower",
    "random_uniform",
    "planted_cut",
    "RunReport",
]

_SPLIT = re.compile(r"[ \t]+")
_MAX_CONNECT_ATTEMPTS = 1000


def _data_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r").strip(" \t")
        if not line or line.startswith("%"):
            continue
        yield lineno, _SPLIT.split(line)


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"non-integer token in {' '.join(tokens)!r}", lineno) from None


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse hMETIS-style text into a hypergraph with 0-indexed vertices.

    >>> parse_hypergraph("% comment\\n1 3\\n1 2 3\\n").edges
    ((0, 1, 2),)
    """
    lines = _data_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("missing 'm n' header line") from None
    counts = _ints(header, lineno)
    if len(counts) != 2 or counts[0] < 0 or counts[1] < 1:
        raise ParseError("header must be two counts 'm n' with n >= 1", lineno)
    m, n = counts
    edges = []
    for lineno, tokens in lines:
        if len(edges) == m:
            raise ParseError(f"more than the declared {m} hyperedges", lineno)
        ids = _ints(tokens, lineno)
        for v in ids:
            if not 1 <= v <= n:
                raise ParseError(f"vertex id {v} outside 1..{n}", lineno)
        if len(set(ids)) != len(ids):
            raise ParseError("duplicate vertex within a hyperedge", lineno)
        edges.append([v - 1 for v in ids])
    if len(edges) != m:
        raise ParseError(f"expected {m} hyperedges, found {len(edges)}")
    return Hypergraph(n, edges)


def serialize_hypergraph(g: Hypergraph) -> str:
    lines = [f"{g.m} {g.n}"]
    lines += [" ".join(str(v + 1) for v in e) for e in g.edges]
    return "\n".join(lines) + "\n"


def read_hypergraph(path: str | Path) -> Hypergraph:
    return parse_hypergraph(Path(path).read_text())


def write_hypergraph(g: Hypergraph, path: str | Path) -> None:
    Path(path).write_text(serialize_hypergraph(g))


def complete_graph(n: int) -> Hypergraph:
    if n < 1:
        raise ValueError("n must be positive")
    return Hypergraph(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


def sunflower(n: int) -> Hypergraph:
    """``n`` hyperedges of rank ``n-1``: every vertex set missing one vertex."""
    if n < 3:
        raise ValueError("sunflower needs n >= 3")
    return Hypergraph(n, [tuple(v for v in range(n) if v != u) for u in range(n)])


def random_uniform(n: int, m: int, rank: int, seed: int = 0) -> Hypergraph:
    """``m`` edges, each a uniformly random ``rank``-subset of the vertices."""
    if not 2 <= rank <= n or m < 0:
        raise ValueError(f"infeasible random-uniform parameters n={n} m={m} rank={rank}")
    rng = np.random.default_rng(seed)
    return Hypergraph(n, [rng.choice(n, size=rank, replace=False).tolist() for _ in range(m)])


def _random_edge(rng, pool):
    r = int(rng.integers(2, len(pool) + 1))
    return rng.choice(pool, size=r, replace=False).tolist()


def planted_cut(n: int, k: int, inside_m: int, cross_m: int, seed: int = 0) -> Hypergraph:
    """Two blocks of sizes ``k`` and ``n-k``, each with ``inside_m`` random edges,
    joined by ``cross_m`` random edges meeting both blocks.

    Both blocks are resampled until connected, so the planted cut has value
    ``cross_m`` and the hypergraph is connected whenever ``cross_m >= 1``.
    """
    if not 2 <= k <= n - 2 or inside_m < 1 or cross_m < 0:
        raise ValueError(f"infeasible planted-cut parameters n={n} k={k}")
    rng = np.random.default_rng(seed)
    left = np.arange(k)
    right = np.arange(k, n)

    def block(pool):
        for _ in range(_MAX_CONNECT_ATTEMPTS):
            edges = [_random_edge(rng, pool) for _ in range(inside_m)]
            local = Hypergraph(len(pool), [[v - pool[0] for v in e] for e in edges])
            if is_connected(local):
                return edges
        raise ValueError(f"could not draw a connected block with {inside_m} edges")

    edges = block(left) + block(right)
    for _ in range(cross_m):
        a = rng.choice(left, size=int(rng.integers(1, k + 1)), replace=False).tolist()
        b = rng.choice(right, size=int(rng.integers(1, n - k + 1)), replace=False).tolist()
        edges.append(a + b)
    return Hypergraph(n, edges)


@dataclass(frozen=True)
class InstanceSpec:
    """A generator name with integer parameters, e.g. ``planted-cut:8,4,6,2``."""

    kind: str
    params: tuple[int, ...] = ()
    seed: int = 0


_GENERATORS = {
    "complete-graph": (1, lambda s: complete_graph(*s.params)),
    "sunflower": (1, lambda s: sunflower(*s.params)),
    "random-uniform": (3, lambda s: random_uniform(*s.params, seed=s.seed)),
    "planted-cut": (4, lambda s: planted_cut(*s.params, seed=s.seed)),
}


def parse_instance_spec(text: str, seed: int = 0) -> InstanceSpec:
    kind, _, rest = text.partition(":")
    if kind == "from-file":
        return InstanceSpec(kind, (), seed)
    if kind not in _GENERATORS:
        raise ValueError(f"unknown generator {kind!r}; expected one of {sorted(_GENERATORS)}")
    try:
        params = tuple(int(t) for t in rest.split(",")) if rest else ()
    except ValueError:
        raise ValueError(f"generator parameters must be integers: {text!r}") from None
    return InstanceSpec(kind, params, seed)


def generate(spec: InstanceSpec | str, seed: int = 0, path: str | Path | None = None) -> Hypergraph:
    """Build the hypergraph described by ``spec`` (deterministic for a fixed seed)."""
    if isinstance(spec, str):
        spec = parse_instance_spec(spec, seed)
    if spec.kind == "from-file":
        if path is None:
            raise ValueError("from-file needs a path")
        return read_hypergraph(path)
    arity, build = _GENERATORS[spec.kind]
    if len(spec.params) != arity:
        raise ValueError(f"{spec.kind} takes {arity} parameter(s), got {len(spec.params)}")
    if any(v < 0 for v in spec.params):
        raise ValueError("generator parameters must be nonnegative")
    return build(spec)


@dataclass
class RunReport:
    """Flat record of one estimator invocation, serialised as a single JSON object."""

    estimate: float
    algorithm: str
    p: float
    delta: float | None
    seed: int | None
    profile: str
    elapsed_ms: float
    recursion_calls: int
    samples_used: int
    eps: float | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        data = json.loads(text)
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in names})

    def to_text(self) -> str:
        width = max(len(f.name) for f in fields(self))
        return "\n".join(f"{f.name:<{width}}  {getattr(self, f.name)}" for f in fields(self))

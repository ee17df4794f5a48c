"""Monte Carlo estimation, relative-variance utilities and median-of-means.

Randomness is always passed in explicitly. Amplifiers derive the generator of
the ``i``-th independent sample from ``(master_seed, i)``, so results do not
depend on how many worker threads evaluate the samples.
"""

from __future__ import annotations

import math
import secrets
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import UndefinedRelativeVariance
from .hypergraph import Hypergraph, _find, _union_edges

__all__ = [
    "EstimatorRun",
    "as_generator",
    "sample_rng",
    "new_seed",
    "monte_carlo_unreliability",
    "mc_disconnections",
    "disconnected_rows",
    "median_of_means",
    "median_of_group_means",
    "amplify",
    "group_size_for",
    "empirical_relative_variance",
    "empirical_capped_relative_variance",
    "DEFAULT_GROUPS",
]

DEFAULT_GROUPS = 9
_MC_BATCH = 1 << 15


@dataclass
class EstimatorRun:
    """An estimate together with how it was produced."""

    estimate: float
    samples_used: int = 1
    seed: int | None = None
    additive_bias_bound: float = 0.0
    recursion_calls: int = 0
    algorithm: str = ""
    profile: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.estimate < 0:
            raise ValueError(f"estimate must be nonnegative, got {self.estimate}")
        if self.samples_used < 1:
            raise ValueError("samples_used must be at least 1")

    def to_dict(self) -> dict:
        return asdict(self)


def new_seed() -> int:
    return secrets.randbits(63)


def as_generator(rng: np.random.Generator | int | None) -> tuple[np.random.Generator, int | None]:
    """Accept a generator, an integer seed, or None (fresh entropy)."""
    if isinstance(rng, np.random.Generator):
        return rng, None
    seed = new_seed() if rng is None else int(rng)
    return np.random.default_rng(seed), seed


def sample_rng(seed: int, index: int) -> np.random.Generator:
    """Generator for the ``index``-th independent sample under ``seed``."""
    return np.random.default_rng([seed, index])


def disconnected_rows(g: Hypergraph, alive: np.ndarray) -> np.ndarray:
    """For each row of the boolean ``(k, m)`` matrix of surviving edges, whether ``g`` falls apart."""
    alive = np.asarray(alive, dtype=bool)
    if g.n == 1:
        return np.zeros(alive.shape[0], dtype=bool)
    if g.n > 62:
        return np.array([_union_count(g, np.flatnonzero(row).tolist()) > 1 for row in alive])
    full = (1 << g.n) - 1
    masks = np.array(g.masks, dtype=np.int64)
    reach = np.ones(alive.shape[0], dtype=np.int64)
    while True:
        before = reach
        for j in range(g.m):
            hit = alive[:, j] & ((reach & masks[j]) != 0)
            reach = np.where(hit, reach | masks[j], reach)
        if np.array_equal(before, reach):
            break
    return reach != full


def mc_disconnections(g: Hypergraph, p: float, trials: int, rng: np.random.Generator) -> int:
    """Number of trials, out of ``trials``, in which random edge failures disconnect ``g``."""
    if g.n == 1:
        return 0
    if g.m == 0:
        return trials
    if p <= 0.0:
        return 0 if _union_count(g, range(g.m)) == 1 else trials
    count = 0
    done = 0
    while done < trials:
        batch = min(_MC_BATCH, trials - done)
        count += int(np.count_nonzero(disconnected_rows(g, rng.random((batch, g.m)) >= p)))
        done += batch
    return count


def _union_count(g: Hypergraph, ids) -> int:
    parent = _union_edges(g.n, (g.edges[i] for i in ids))
    return sum(1 for v in range(g.n) if _find(parent, v) == v)


def monte_carlo_unreliability(
    g: Hypergraph,
    p: float,
    trials: int,
    rng: np.random.Generator | int | None = None,
    workers: int = 1,
) -> EstimatorRun:
    """Fraction of ``trials`` independent failure patterns that disconnect ``g``.

    Trials are drawn in fixed-size chunks, chunk ``i`` from ``sample_rng(seed, i)``,
    so the estimate does not depend on ``workers``.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if isinstance(rng, np.random.Generator):
        seed = int(rng.integers(2**63))
        reported = None
    else:
        seed = new_seed() if rng is None else int(rng)
        reported = seed
    sizes = [min(_MC_BATCH, trials - start) for start in range(0, trials, _MC_BATCH)]

    def chunk(i):
        return mc_disconnections(g, p, sizes[i], sample_rng(seed, i))

    if workers <= 1 or len(sizes) == 1:
        hits = sum(chunk(i) for i in range(len(sizes)))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(chunk, range(len(sizes))))
    return EstimatorRun(hits / trials, samples_used=trials, seed=reported, algorithm="mc")


def median_of_group_means(samples: Sequence[float], groups: int) -> float:
    """Split ``samples`` into ``groups`` consecutive equal blocks; median of block means."""
    x = np.asarray(samples, dtype=float)
    if groups < 1 or groups % 2 == 0:
        raise ValueError("groups must be a positive odd integer")
    if x.size % groups:
        raise ValueError("sample count must be a multiple of groups")
    return float(np.median(x.reshape(groups, -1).mean(axis=1)))


def _draw_all(source, total: int, seed: int, workers: int) -> list[float]:
    if workers <= 1:
        return [float(source(sample_rng(seed, i))) for i in range(total)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return [float(v) for v in pool.map(lambda i: source(sample_rng(seed, i)), range(total))]


def median_of_means(
    source: Callable[[np.random.Generator], float],
    groups: int,
    group_size: int,
    seed: int | None = None,
    workers: int = 1,
) -> float:
    """Median of ``groups`` means, each of ``group_size`` independent draws of ``source``.

    ``source`` receives a fresh generator per draw, seeded from ``(seed, i)``.
    """
    if groups < 1 or groups % 2 == 0:
        raise ValueError("groups must be a positive odd integer")
    if group_size < 1:
        raise ValueError("group_size must be at least 1")
    seed = new_seed() if seed is None else seed
    samples = _draw_all(source, groups * group_size, seed, workers)
    return median_of_group_means(samples, groups)


def group_size_for(eps: float, relvar: float) -> int:
    """Draws per group so that each group mean has relative variance ``eps**2``."""
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    return max(1, math.ceil(relvar / eps**2))


def amplify(
    source: Callable[[np.random.Generator], float],
    eps: float,
    *,
    relvar: float = 1.0,
    groups: int = DEFAULT_GROUPS,
    seed: int | None = None,
    workers: int = 1,
) -> tuple[float, int]:
    """Median-of-means of an estimator with (capped) relative variance ``relvar``.

    Returns the amplified value and the number of draws used.
    """
    size = group_size_for(eps, relvar)
    return median_of_means(source, groups, size, seed=seed, workers=workers), groups * size


def empirical_capped_relative_variance(samples: Sequence[float], delta: float) -> float:
    """Sample variance over ``max(mean**2, delta**2)``."""
    x = np.asarray(samples, dtype=float)
    if x.size < 2:
        raise ValueError("need at least two samples")
    denom = max(float(x.mean()) ** 2, delta**2)
    var = float(x.var(ddof=1))
    if denom == 0.0:
        raise UndefinedRelativeVariance("relative variance of an all-zero sample")
    return var / denom


def empirical_relative_variance(samples: Sequence[float]) -> float:
    return empirical_capped_relative_variance(samples, 0.0)

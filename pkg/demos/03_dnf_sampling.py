"""Large hyperedges and DNF sampling.

When some edges cover more than half the vertices they pairwise intersect, so
they leave the hypergraph disconnected exactly when some vertex loses all of
them. That event is a DNF formula, which the Karp-Luby-Madras sampler can both
count and sample from. The second estimator uses this to handle hypergraphs
like the sunflower, where every edge is large.
"""

import numpy as np

from hyperrel import (
    DESK_ALG2,
    KlmSampler,
    amplify,
    degree_cut_dnf,
    estimate_alg2,
    exact_dnf_probability,
    exact_unreliability,
)
from hyperrel.io import planted_cut, sunflower

rng = np.random.default_rng(0)
g = sunflower(6)
f = degree_cut_dnf(g, range(g.m))
p = 0.3
sampler = KlmSampler(f, p)
estimates = [sampler.estimate(rng) for _ in range(2000)]
print(f"degree-cut formula of sunflower(6): {f.num_clauses} clauses")
print(f"  exact {exact_dnf_probability(f, p):.5f}, KLM mean {np.mean(estimates):.5f}")
surviving = [int(g.m - sampler.sample(rng).sum()) for _ in range(5000)]
print(f"  conditioned on disconnection, surviving edges: {np.bincount(surviving).tolist()}")

delta = 1e-3
profile = DESK_ALG2.replace(small_n_threshold=2)
for name, g, p in [("sunflower(7)", sunflower(7), 0.3), ("planted cut", planted_cut(8, 4, 4, 2, seed=1), 0.05)]:
    run = estimate_alg2(g, p, delta, profile, rng=4)
    value, used = amplify(lambda r: estimate_alg2(g, p, delta, profile, r).estimate, 0.1, relvar=3, seed=5)
    routes = {k: v for k, v in run.meta.items() if k.endswith(("revelations", "steps")) and v}
    print(f"{name}: amplified {value:.5f}, exact {exact_unreliability(g, p):.5f}, one draw took {routes}")

"""Estimating unreliability by random contraction.

Contracting every edge with probability 1-q and then asking about failure rate
p/q gives, on average, exactly the original unreliability. The recursive
estimator applies this step repeatedly, with exact or Monte Carlo leaves, and a
median of means turns its draws into a (1 +- eps) estimate.
"""

import numpy as np

from hyperrel import DESK_ALG1, amplify, estimate_alg1, exact_unreliability, random_contract
from hyperrel.io import complete_graph, random_uniform

rng = np.random.default_rng(0)
g = complete_graph(5)
p, q = 0.15, 0.4

draws = [exact_unreliability(random_contract(g, q, rng)[0], p / q) for _ in range(20000)]
print(f"K5 at p={p}: exact {exact_unreliability(g, p):.5f}, mean over contractions {np.mean(draws):.5f}")

# Lowering the exact threshold makes the estimator recurse even on small inputs.
profile = DESK_ALG1.replace(small_n_threshold=2)
for g, p in [(complete_graph(5), 0.15), (random_uniform(8, 12, 3, seed=3), 0.1)]:
    run = estimate_alg1(g, p, profile, rng=1)
    value, used = amplify(lambda r: estimate_alg1(g, p, profile, r).estimate, eps=0.1, seed=2)
    print(
        f"n={g.n} m={g.m}: one draw {run.estimate:.5f} ({run.recursion_calls} calls), "
        f"amplified {value:.5f} from {used} draws, exact {exact_unreliability(g, p):.5f}"
    )

"""How fragile is a hypergraph?

We compute the exact disconnection probability of a few small hypergraphs and
compare it with the cheap bracket p**lambda <= u <= n**2 * p**lambda, where
lambda is the minimum cut.
"""

from hyperrel import exact_unreliability, min_cut_value
from hyperrel.io import complete_graph, planted_cut, sunflower

instances = {
    "triangle": complete_graph(3),
    "K5": complete_graph(5),
    "sunflower(6)": sunflower(6),
    "planted cut (8 vertices, 2 crossing edges)": planted_cut(8, 4, 5, 2, seed=1),
}

for name, g in instances.items():
    lam = min_cut_value(g)
    print(f"{name}: n={g.n}, m={g.m}, min cut {lam}")
    for p in (0.3, 0.1, 0.01):
        u = exact_unreliability(g, p)
        lo, hi = p**lam, g.n**2 * p**lam
        print(f"  p={p:<5} u={u:.3e}   bracket [{lo:.3e}, {hi:.3e}]")

# The sunflower has n edges of rank n-1. Its disconnection probability is
# driven by its n degree cuts of size n-1, not by one cheap cut.
g = sunflower(8)
p = 0.2
print(f"\nsunflower(8) at p={p}: u={exact_unreliability(g, p):.4e}, p**lambda={p**7:.4e}")

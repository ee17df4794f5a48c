import numpy as np
import pytest
from conftest import hypergraphs
from hypothesis import given
from hypothesis import strategies as st
from oracles import brute_min_cut, connected

from hyperrel import AlreadyDisconnected, Hypergraph, contract, delete_edges, is_connected, min_cut_value
from hyperrel.hypergraph import (
    brute_force_min_cut,
    degree_cut,
    degrees_in,
    is_universally_small,
    max_rank,
    num_components,
    random_contract,
)
from hyperrel.io import complete_graph, sunflower

TRIANGLE = complete_graph(3)


def test_edges_are_normalised_and_singletons_dropped():
    g = Hypergraph(4, [(3, 1), (2,), [0, 1, 2]])
    assert g.edges == ((1, 3), (0, 1, 2))
    assert g.dropped_singletons == 1
    assert g.ranks == (2, 3)
    assert g.masks == (0b1010, 0b0111)


@pytest.mark.parametrize(
    "n, edges",
    [(0, []), (3, [()]), (3, [(0, 3)]), (3, [(-1, 0)]), (3, [(1, 1)])],
)
def test_malformed_hypergraphs_rejected(n, edges):
    with pytest.raises(ValueError):
        Hypergraph(n, edges)


def test_parallel_edges_are_kept():
    assert Hypergraph(2, [(0, 1), (1, 0)]).m == 2


def test_connectivity_basics():
    assert is_connected(Hypergraph(1))
    assert not is_connected(Hypergraph(2))
    assert is_connected(Hypergraph(4, [(0, 1, 2, 3)]))
    assert not is_connected(Hypergraph(4, [(0, 1), (2, 3)]))
    assert num_components(Hypergraph(5, [(0, 1), (2, 3)])) == 3
    assert num_components(TRIANGLE, []) == 3


@pytest.mark.parametrize(
    "g, lam",
    [
        (TRIANGLE, 2),
        (Hypergraph(3, [(0, 1, 2)]), 1),
        (Hypergraph(3, [(0, 1), (1, 2)]), 1),
        (complete_graph(4), 3),
        (complete_graph(6), 5),
        (sunflower(5), 4),
        (sunflower(7), 6),
    ],
)
def test_min_cut_known_values(g, lam):
    assert min_cut_value(g) == lam
    assert brute_force_min_cut(g) == lam


def test_min_cut_errors():
    with pytest.raises(AlreadyDisconnected):
        min_cut_value(Hypergraph(3, [(0, 1)]))
    with pytest.raises(ValueError):
        min_cut_value(Hypergraph(1))


@given(hypergraphs(max_n=8, max_m=10))
def test_min_cut_matches_reference(g):
    if g.n < 2 or not connected(g.n, g.edges):
        return
    ref = brute_min_cut(g.n, g.edges)
    assert min_cut_value(g) == ref
    assert brute_force_min_cut(g) == ref


@given(hypergraphs(max_n=8, max_m=10))
def test_min_cut_at_most_min_degree(g):
    if g.n < 2 or not is_connected(g):
        return
    assert min_cut_value(g) <= min(degrees_in(g))


def test_contract_maps_vertices_and_edges():
    g = Hypergraph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    h, cmap = contract(g, [1])
    assert h.n == 3
    assert cmap.vertex_map == (0, 1, 1, 2)
    assert cmap.edge_map == (0, -1, 1, 2)
    assert h.edges == ((0, 1), (1, 2), (0, 2))


def test_contract_everything_gives_single_vertex():
    h, cmap = contract(TRIANGLE, [0, 1])
    assert h.n == 1 and h.m == 0
    assert cmap.edge_map == (-1, -1, -1)


def test_contract_nothing_is_identity():
    h, cmap = contract(TRIANGLE, [])
    assert h == TRIANGLE and cmap.edge_map == (0, 1, 2)


@given(hypergraphs(max_n=7, max_m=8), st.data())
def test_contraction_is_order_independent(g, data):
    ids = data.draw(st.lists(st.integers(0, max(g.m - 1, 0)), unique=True)) if g.m else []
    ids = [i for i in ids if i < g.m]
    first, cmap = contract(g, ids[: len(ids) // 2])
    rest = [cmap.edge_map[i] for i in ids[len(ids) // 2 :] if cmap.edge_map[i] >= 0]
    two_step, _ = contract(first, rest)
    one_step, _ = contract(g, ids)
    assert two_step == one_step


@given(hypergraphs(max_n=7, max_m=8), st.data())
def test_contraction_preserves_connectivity_and_cuts(g, data):
    if g.m == 0:
        return
    ids = data.draw(st.lists(st.integers(0, g.m - 1), unique=True, max_size=g.m))
    h, _ = contract(g, ids)
    assert is_connected(h) == is_connected(g)
    if h.n >= 2 and is_connected(h):
        # every cut of G/F is a cut of G
        assert min_cut_value(h) >= min_cut_value(g)


def test_delete_edges():
    h, cmap = delete_edges(TRIANGLE, [1])
    assert h.n == 3 and h.edges == ((0, 1), (1, 2))
    assert cmap.edge_map == (0, -1, 1)


def test_random_contract_extremes():
    rng = np.random.default_rng(1)
    assert random_contract(TRIANGLE, 1.0, rng)[0] == TRIANGLE
    assert random_contract(TRIANGLE, 0.0, rng)[0].n == 1
    with pytest.raises(ValueError):
        random_contract(TRIANGLE, 1.5, rng)


def test_random_contract_edge_rate():
    rng = np.random.default_rng(2)
    g = Hypergraph(2, [(0, 1)])
    merged = sum(random_contract(g, 0.3, rng)[0].n == 1 for _ in range(4000))
    assert abs(merged / 4000 - 0.7) < 0.03


def test_degree_helpers():
    g = Hypergraph(4, [(0, 1, 2), (2, 3), (0, 3)])
    assert degrees_in(g) == [2, 1, 2, 2]
    assert degrees_in(g, [0]) == [1, 1, 1, 0]
    assert degree_cut(g, 2) == [0, 1]
    assert max_rank(g) == 3
    assert not is_universally_small(g)
    assert is_universally_small(Hypergraph(4, [(0, 1), (2, 3)]))
    assert max_rank(Hypergraph(2)) == 0

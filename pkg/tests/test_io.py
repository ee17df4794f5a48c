import json

import pytest
from conftest import hypergraphs
from hypothesis import given

from hyperrel import Hypergraph, ParseError, min_cut_value, parse_hypergraph, serialize_hypergraph
from hyperrel.io import (
    InstanceSpec,
    RunReport,
    generate,
    parse_instance_spec,
    planted_cut,
    random_uniform,
    read_hypergraph,
    write_hypergraph,
)
from hyperrel.hypergraph import is_connected


def test_parse_triangle():
    g = parse_hypergraph("3 3\n1 2\n2 3\n1 3\n")
    assert g == Hypergraph(3, [(0, 1), (1, 2), (0, 2)])


def test_parse_comment_and_rank_three_edge():
    assert parse_hypergraph("% comment\n1 3\n1 2 3\n").edges == ((0, 1, 2),)


def test_parse_crlf_tabs_and_blank_lines():
    text = "% header\r\n2\t4\r\n\r\n1  2\t3\r\n% mid\r\n3 4\r\n"
    assert parse_hypergraph(text) == Hypergraph(4, [(0, 1, 2), (2, 3)])


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("1 2\n1 1\n", 2, "duplicate"),
        ("1 2\n1 3\n", 2, "outside"),
        ("1 2\n0 1\n", 2, "outside"),
        ("1 2\n1 x\n", 2, "non-integer"),
        ("2 3\n1 2\n", None, "expected 2"),
        ("1 3\n1 2\n2 3\n", 3, "more than"),
        ("1\n1 2\n", 1, "header"),
        ("% only a comment\n", None, "header"),
        ("-1 3\n", 1, "header"),
    ],
)
def test_parse_errors(text, line, fragment):
    with pytest.raises(ParseError) as info:
        parse_hypergraph(text)
    assert info.value.line == line
    assert fragment in str(info.value)
    if line is not None:
        assert str(info.value).startswith(f"line {line}:")


def test_single_vertex_edges_are_dropped():
    g = parse_hypergraph("2 2\n1\n1 2\n")
    assert g.edges == ((0, 1),) and g.dropped_singletons == 1


@given(hypergraphs(min_n=1, max_n=9, max_m=8))
def test_serialise_round_trip(g):
    assert parse_hypergraph(serialize_hypergraph(g)) == g


def test_file_round_trip(tmp_path):
    g = random_uniform(6, 10, 3, seed=1)
    path = tmp_path / "g.hgr"
    write_hypergraph(g, path)
    assert read_hypergraph(path) == g
    assert generate("from-file", path=path) == g
    with pytest.raises(ValueError):
        generate("from-file")


def test_generators():
    sun = generate("sunflower:5")
    assert sun.n == 5 and sun.m == 5 and set(sun.ranks) == {4}
    assert min_cut_value(sun) == 4
    assert set(sun.edges) == {tuple(v for v in range(5) if v != u) for u in range(5)}
    assert min_cut_value(generate("complete-graph:4")) == 3
    assert generate("random-uniform:6,10,3", seed=1) == generate("random-uniform:6,10,3", seed=1)
    assert generate(InstanceSpec("random-uniform", (6, 10, 3), 2)).m == 10


def test_planted_cut_has_planted_value():
    for seed in range(10):
        g = planted_cut(9, 4, 5, 2, seed=seed)
        assert is_connected(g)
        assert min_cut_value(g) <= 2


@pytest.mark.parametrize(
    "spec",
    ["random-uniform:4,3,5", "sunflower:2", "planted-cut:5,1,2,1", "nope:1", "sunflower:a", "sunflower:3,4"],
)
def test_infeasible_specs(spec):
    with pytest.raises(ValueError):
        generate(spec)


def test_parse_instance_spec():
    assert parse_instance_spec("planted-cut:8,4,6,2", seed=3) == InstanceSpec("planted-cut", (8, 4, 6, 2), 3)


def test_run_report_json():
    r = RunReport(0.25, "alg1", 0.1, None, 7, "desk", 1.5, 10, 100, eps=0.1)
    data = json.loads(r.to_json())
    assert set(data) >= {
        "estimate",
        "algorithm",
        "p",
        "delta",
        "seed",
        "profile",
        "elapsed_ms",
        "recursion_calls",
        "samples_used",
    }
    assert RunReport.from_json(r.to_json()) == r
    assert "estimate" in r.to_text()

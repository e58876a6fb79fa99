import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import digraph_corpus, random_digraph
from greenforest.errors import (
    BadOrder,
    BadWeight,
    DuplicateEdge,
    NoSuchEdge,
    ParseError,
    SelfLoop,
)
from greenforest.graph import (
    WeightedDigraph,
    bfs_distances,
    combinatorial_laplacian,
    complete_graph,
    diameter,
    diamond_graph,
    directed_cycle,
    from_undirected,
    gamma2_graph,
    gamma_graph,
    is_directed_cycle,
    is_simple,
    is_strongly_connected,
    is_undirected,
    parse_graph,
    path_graph,
    reachable_avoiding,
    shortest_path,
    to_edge_list,
    to_json,
    to_weight,
)


def test_weights_parse_exactly():
    assert to_weight("3/4") == F(3, 4)
    assert to_weight("0.1") == F(1, 10)
    assert to_weight(0.1) == F(1, 10)
    assert to_weight(7) == 7
    for bad in ("0", "-1", "abc", "1/0", True, None):
        with pytest.raises(BadWeight):
            to_weight(bad)


def test_edge_list_parsing():
    g = parse_graph("# comment\norder: a b c\na b 2\nb c 1/2\nc a\n")
    assert g.labels == ("a", "b", "c")
    assert g.weight("b", "c") == F(1, 2)
    assert g.weight("c", "a") == 1
    assert g.weight("a", "c") == 0
    assert g.num_edges == 3


@pytest.mark.parametrize("text, exc, line", [
    ("a b\na b\n", DuplicateEdge, None),
    ("a a\n", SelfLoop, None),
    ("a b -1\n", BadWeight, None),
    ("a b 1 extra\n", ParseError, 1),
    ("a b\norder: a b\n", ParseError, 2),
    ("order: a\na b\n", ParseError, None),
])
def test_edge_list_errors(text, exc, line):
    with pytest.raises(exc) as info:
        parse_graph(text)
    if line is not None:
        assert info.value.line == line


def test_json_parsing():
    g = parse_graph(json.dumps({"vertices": ["p", "q"], "edges": [{"src": "p", "dst": "q", "w": "2/3"}],
                                "undirected": True}), "json")
    assert g.weight("q", "p") == F(2, 3)
    with pytest.raises(ParseError):
        parse_graph("{not json", "json")
    with pytest.raises(ParseError):
        parse_graph("[]", "json")
    with pytest.raises(ValueError):
        parse_graph("", "yaml")


def test_duplicate_labels_and_missing_edges():
    with pytest.raises(BadOrder):
        WeightedDigraph(["a", "a"])
    with pytest.raises(NoSuchEdge):
        complete_graph(3).without_edge(1, 1)


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False), st.integers(min_value=2, max_value=6))
def test_serialization_round_trip(rng, n):
    g = random_digraph(rng, n)
    assert parse_graph(to_edge_list(g)) == g
    assert parse_graph(to_json(g), "json") == g


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False), st.integers(min_value=2, max_value=6))
def test_laplacian_rows_sum_to_zero(rng, n):
    g = random_digraph(rng, n)
    lap = combinatorial_laplacian(g)
    assert all(x == 0 for x in lap.matvec([1] * n))
    assert [lap[i, i] for i in range(n)] == list(g.degrees())


@settings(max_examples=30, deadline=None)
@given(st.randoms(use_true_random=False), st.integers(min_value=2, max_value=6))
def test_undirected_laplacian_symmetric(rng, n):
    base = random_digraph(rng, n)
    g = from_undirected(base.labels, [(s, d, w) for s, d, w in base.edges()
                                      if base.index(s) < base.index(d)] or [(base.labels[0], base.labels[1])])
    lap = combinatorial_laplacian(g)
    assert lap == lap.T
    assert is_undirected(g)


def test_connectivity_predicates():
    assert is_strongly_connected(directed_cycle(4))
    assert not is_strongly_connected(WeightedDigraph("ab", [("a", "b", 1)]))
    assert is_strongly_connected(WeightedDigraph("a"))
    assert is_directed_cycle(directed_cycle(5))
    assert is_directed_cycle(complete_graph(2))
    assert not is_directed_cycle(complete_graph(3))
    assert is_simple(complete_graph(4))
    assert not is_simple(from_undirected("ab", [("a", "b", 2)]))
    assert not is_simple(directed_cycle(3))
    assert all(is_strongly_connected(g) for g in digraph_corpus())


def test_paths_and_reachability():
    p = path_graph(4)
    # index-based helpers
    assert bfs_distances(p, 0)[3] == 3
    assert shortest_path(p, 0, 3) == [0, 1, 2, 3]
    assert diameter(p) == 3
    assert diameter(WeightedDigraph("ab", [("a", "b", 1)])) == float("inf")
    c = directed_cycle(4)
    assert reachable_avoiding(c, 0, 2) == {0, 1}


@pytest.mark.parametrize("n", range(3, 9))
def test_gamma_graph_edge_count(n):
    g = gamma_graph(n)
    assert g.num_edges == (n - 1) + n * (n - 1) // 2 - (n - 1) + 1
    assert g.num_edges == n * (n - 1) // 2 + 1
    assert is_strongly_connected(g)


def test_gamma_graph_too_small():
    with pytest.raises(BadOrder):
        gamma_graph(2)


def test_named_graphs():
    assert diamond_graph().num_edges == 10
    assert not diamond_graph().has_edge("a", "d")
    g2 = gamma2_graph()
    assert g2.num_edges == 5 and is_strongly_connected(g2)


def test_without_edge_and_volume():
    k = complete_graph(3)
    assert k.volume() == 6
    assert k.without_edge(1, 2).num_edges == 5
    assert k.without_edge(1, 2, both=True).num_edges == 4
    assert k.volume([1, 2]) == 4

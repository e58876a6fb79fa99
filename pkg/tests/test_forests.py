from fractions import Fraction as F
from itertools import combinations
from math import prod

import pytest

from corpus import digraph_corpus, simple_corpus, small_corpus
from greenforest.errors import BadConstraint, NotStronglyConnected, NotUndirected, TooLarge, TooSmall
from greenforest.forests import (
    enumerate_rooted_forests,
    enumerate_unrooted_forests,
    forest_bracket,
    forest_sum_2,
    rooted_2forest_total,
    tau_edge,
    tau_root,
    tau_undirected,
    two_forest_weights,
)
from greenforest.graph import WeightedDigraph, complete_graph, diamond_graph, directed_cycle, gamma2_graph
from greenforest.oracles import ForestTables


def edge_subset_forests(g, k):
    """Rooted k-forests found by scanning (n-k)-subsets of edges: out-degree <= 1, acyclic."""
    edges = list(g.edge_items())
    out = []
    for subset in combinations(edges, g.n - k):
        succ = {}
        if any(succ.setdefault(i, j) != j for (i, j), _ in subset):
            continue
        root_of = {}
        ok = True
        for start in range(g.n):
            seen, i = set(), start
            while i in succ:
                if i in seen:
                    ok = False
                    break
                seen.add(i)
                i = succ[i]
            if not ok:
                break
            root_of[start] = i
        if ok:
            out.append((tuple(root_of[x] for x in range(g.n)), prod((w for _, w in subset), start=F(1))))
    return out


@pytest.mark.parametrize("g", small_corpus(5)[:25] + (gamma2_graph(), directed_cycle(4)),
                         ids=lambda g: repr(g))
def test_enumerator_matches_edge_subsets(g):
    for k in (1, 2):
        mine = sorted((tuple(g.index(r) for _, r in f.root_of), f.weight)
                      for f in enumerate_rooted_forests(g, k))
        assert mine == sorted(edge_subset_forests(g, k))


def test_cayley_counts():
    for n in range(2, 7):
        g = complete_graph(n)
        assert all(tau_root(g, v) == n ** (n - 2) for v in g.labels)
        assert len(enumerate_rooted_forests(g, 1)) == n ** (n - 1)


def test_k4_forest_counts():
    g = complete_graph(4)
    assert len(enumerate_unrooted_forests(g, 1)) == 16
    two = enumerate_unrooted_forests(g, 2)
    assert len(two) == 15
    assert sum(prod(len(c) for c in f.components) for f in two) == 48
    assert rooted_2forest_total(g) == 48


def test_tau_matches_enumeration_on_corpus():
    for g in small_corpus(6):
        t = ForestTables(g)
        assert [tau_root(g, v) for v in g.labels] == t.tau
        assert rooted_2forest_total(g) == t.total_2()


def test_forest_sum_2_and_bracket_match_enumeration():
    for g in small_corpus(5)[:40]:
        t = ForestTables(g)
        lab = g.labels
        n = g.n
        for v in range(n):
            for b in range(n):
                if v == b:
                    continue
                for u in range(n):
                    for a in range(n):
                        if u == a:
                            continue
                        x = t.constrained(v, b, u, a)
                        y = t.constrained(v, b, a, u)
                        assert forest_bracket(g, lab[v], lab[b], lab[u], lab[a]) == x - y
                        if u != b and a != v:
                            assert forest_sum_2(g, lab[v], lab[b], lab[u], lab[a]) == x


def test_gamma2_in_tree_weights():
    g = gamma2_graph()
    assert [tau_root(g, v) for v in "abcd"] == [2, 2, 1, 1]


def test_forest_sum_2_constraints():
    g = complete_graph(4)
    with pytest.raises(BadConstraint):
        forest_sum_2(g, 1, 1, 2, 3)
    with pytest.raises(BadConstraint):
        forest_sum_2(g, 1, 2, 2, 3)
    with pytest.raises(BadConstraint):
        forest_sum_2(g, 1, 2, 3, 1)
    assert forest_sum_2(g, 1, 2, 3, 3) == 0
    # u is the root v: a single minor
    assert forest_sum_2(g, 1, 2, 1, 3) == ForestTables(g).constrained(0, 1, 0, 2)
    with pytest.raises(BadConstraint):
        forest_bracket(g, 1, 1, 2, 3)


def test_preconditions():
    with pytest.raises(NotStronglyConnected):
        tau_root(WeightedDigraph("ab", [("a", "b", 1)]), "a")
    with pytest.raises(TooSmall):
        rooted_2forest_total(WeightedDigraph("a"))
    with pytest.raises(NotUndirected):
        tau_undirected(directed_cycle(3))
    with pytest.raises(NotUndirected):
        enumerate_unrooted_forests(directed_cycle(3), 1)
    with pytest.raises(TooLarge):
        enumerate_rooted_forests(complete_graph(11), 1)
    with pytest.raises(TooLarge):
        enumerate_rooted_forests(complete_graph(7), 1)  # 42 edges
    assert len(enumerate_rooted_forests(complete_graph(4), 2, guard_n=4, guard_edges=12)) == 48


def test_tau_edge():
    k3 = complete_graph(3)
    assert tau_undirected(k3) == 3
    assert tau_edge(k3, 1, 2) == 2
    d = diamond_graph()
    assert tau_undirected(d) == 8
    assert sum(tau_edge(d, s, t) for s, t, _ in d.edges() if s < t) == 8 * 3


def test_undirected_two_forests_separate():
    for g in simple_corpus()[:20]:
        if g.n > 6:
            continue
        sep = two_forest_weights(g)
        forests = enumerate_unrooted_forests(g, 2)
        for x, y in combinations(range(g.n), 2):
            count = sum(f.weight for f in forests
                        if not any(g.labels[x] in c and g.labels[y] in c for c in f.components))
            assert sep[x][y] == count


def test_dump_format_is_deterministic():
    g = gamma2_graph()
    lines = [f.format() for f in enumerate_rooted_forests(g, 1)]
    assert lines == [f.format() for f in enumerate_rooted_forests(g, 1)]
    assert lines[0].startswith("roots=[") and "weight=1" in lines[0]
    assert len(lines) == 6


def test_corpus_shape():
    c = digraph_corpus()
    assert len(c) >= 200
    assert all(g.n <= 7 for g in c)
    assert all(1 <= w <= 5 for g in c for _, _, w in g.edges())

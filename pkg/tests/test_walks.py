from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import (
    cycles,
    digraph_corpus,
    non_cycles,
    random_digraph,
    simple_corpus,
    small_corpus,
    weighted_undirected_corpus,
)
from greenforest.errors import NoSuchEdge, NotSimple, NotStronglyConnected, NotUndirected, Timeout
from greenforest.graph import (
    WeightedDigraph,
    complete_graph,
    diamond_graph,
    directed_cycle,
    gamma_graph,
    path_graph,
)
from greenforest.greens import green_normalized_scaled_exact, stationary, trace_green_normalized
from greenforest.oracles import ForestTables
from greenforest.walks import (
    check_bounds,
    commute_exact,
    effective_resistance,
    gamma_lower_bound,
    gamma_sandwich,
    hitting_edge_exact,
    hitting_exact,
    hitting_matrix,
    hitting_mc,
    hitting_solve,
    hitting_sum_identity,
    kemeny,
    kemeny_by_start,
    kemeny_mc,
    normalized_hitting,
    return_time,
)


def test_k3_walk_values():
    g = complete_graph(3)
    assert hitting_exact(g, 1, 2) == 2
    assert commute_exact(g, 1, 2) == 4
    assert effective_resistance(g, 1, 2) == F(2, 3)
    assert kemeny(g) == F(4, 3)
    assert return_time(g, 1) == 3
    assert hitting_exact(g, 1, 1) == 0


def test_path_and_cycle_values():
    p = path_graph(3)
    assert effective_resistance(p, 1, 3) == 2
    assert hitting_exact(p, 1, 3) == 4  # (n-1)^2 on a path
    c = directed_cycle(4)
    assert hitting_exact(c, 1, 4) == 3
    assert hitting_exact(c, 2, 1) == 3


def test_hitting_matches_enumeration():
    for g in small_corpus(6):
        t = ForestTables(g)
        h = hitting_matrix(g).matrix
        for u in range(g.n):
            for v in range(g.n):
                assert h[u, v] == t.hitting(u, v)


def test_hitting_kernel_identity_and_solver():
    for g in digraph_corpus():
        h = hitting_matrix(g, "digraph").matrix
        k = green_normalized_scaled_exact(g).matrix
        lab = g.labels
        for v in range(g.n):
            col = hitting_solve(g, lab[v])
            for u in range(g.n):
                assert h[u, v] == k[v, v] - k[u, v]
                assert abs(col[u] - float(h[u, v])) <= 1e-9
        assert normalized_hitting(g, lab[0], lab[-1]) == h[0, g.n - 1]


def test_hitting_edge_form():
    for g in digraph_corpus()[:80]:
        for s, d, _ in g.edges():
            assert hitting_edge_exact(g, d, s) == hitting_exact(g, d, s)
    with pytest.raises(NoSuchEdge):
        hitting_edge_exact(directed_cycle(4), 1, 3)


def test_undirected_hitting_form_agrees():
    for g in simple_corpus()[:30] + weighted_undirected_corpus()[:20]:
        assert hitting_matrix(g, "undirected").matrix == hitting_matrix(g, "digraph").matrix
    with pytest.raises(NotUndirected):
        hitting_matrix(directed_cycle(3), "undirected")


@settings(max_examples=25, deadline=None)
@given(st.randoms(use_true_random=False), st.integers(min_value=2, max_value=5))
def test_hitting_triangle_inequality(rng, n):
    g = random_digraph(rng, n)
    h = hitting_matrix(g).matrix
    for u in range(n):
        for v in range(n):
            for w in range(n):
                assert h[u, v] <= h[u, w] + h[w, v]


def test_kemeny_start_independence_and_trace():
    for g in digraph_corpus():
        starts = kemeny_by_start(g)
        assert len(set(starts)) == 1
        assert starts[0] == trace_green_normalized(g)


@pytest.mark.parametrize("g", cycles(), ids=repr)
def test_kemeny_cycle_equality(g):
    assert kemeny(g) == F(g.n - 1, 2)


def test_kemeny_weighted_cycle_equality():
    assert kemeny(directed_cycle(5, [1, 2, 3, 4, 5])) == 2


def test_kemeny_strict_off_cycles():
    for g in non_cycles() + simple_corpus():
        if g.n > 2:
            assert kemeny(g) > F(g.n - 1, 2)


def test_return_time():
    for g in digraph_corpus():
        pi = stationary(g).pi
        for v, p in zip(g.labels, pi):
            assert return_time(g, v) * p == 1


def test_hitting_sum_identity_on_simple_graphs():
    for g in simple_corpus():
        lhs, rhs = hitting_sum_identity(g)
        assert lhs == rhs
    with pytest.raises(NotSimple):
        hitting_sum_identity(directed_cycle(3))


def test_commute_and_resistance():
    for g in simple_corpus()[:30] + weighted_undirected_corpus():
        vol = g.volume()
        for s, d, _ in g.edges():
            assert commute_exact(g, s, d) == vol * effective_resistance(g, s, d)
    with pytest.raises(NotUndirected):
        effective_resistance(directed_cycle(3), 1, 2)


def test_resistance_is_a_metric():
    g = diamond_graph()
    lab = g.labels
    r = {(u, v): effective_resistance(g, u, v) for u in lab for v in lab}
    assert all(r[u, u] == 0 for u in lab)
    assert all(r[u, v] == r[v, u] for u in lab for v in lab)
    assert all(r[u, v] <= r[u, w] + r[w, v] for u in lab for v in lab for w in lab)
    assert r["b", "c"] == F(1, 2)


def test_bounds_on_corpus():
    for g in digraph_corpus() + simple_corpus() + weighted_undirected_corpus():
        rep = check_bounds(g)
        assert rep.all_passed, rep.failures()[:3]


def test_resistance_edge_bound_is_not_tight_on_k3():
    rep = check_bounds(complete_graph(3))
    eq = [v for v in rep.verdicts if v.name == "resistance-edge-equality"]
    assert eq and all(v.informational and not v.passed for v in eq)
    assert all(v.lhs == 2 and v.rhs == F(8, 3) for v in eq)
    assert rep.all_passed


def test_reach_bound_infinite_without_edge():
    rep = check_bounds(directed_cycle(4))
    reach = [v for v in rep.verdicts if v.name == "hitting-reach" and v.pair == (1, 3)]
    assert reach[0].rhs == float("inf")


def test_gamma_sandwich():
    assert gamma_lower_bound(5) == 34
    for n in range(3, 8):
        lo, h, hi = gamma_sandwich(n)
        assert lo <= h <= hi
        assert h == hitting_exact(gamma_graph(n), "v1", f"v{n}")


def test_preconditions():
    g = WeightedDigraph("ab", [("a", "b", 1)])
    for fn in (lambda: hitting_exact(g, "a", "b"), lambda: kemeny(g)):
        with pytest.raises(NotStronglyConnected):
            fn()
    with pytest.raises(NotStronglyConnected):
        hitting_solve(g, "b")


# -- Monte Carlo -------------------------------------------------------------------

def test_mc_k3_and_cycle():
    k3, c4 = complete_graph(3), directed_cycle(4)
    assert hitting_mc(k3, 1, 2, trials=20_000, seed=3).covers(2)
    assert hitting_mc(c4, 1, 3, trials=20_000, seed=3).covers(2)
    assert kemeny_mc(k3, 1, trials=20_000, seed=3).covers(F(4, 3))
    assert kemeny_mc(c4, 2, trials=20_000, seed=3).covers(F(3, 2))


def test_mc_deterministic_cycle_has_zero_width():
    est = hitting_mc(directed_cycle(4), 1, 3, trials=1000, seed=0)
    assert est.mean == 2 and est.half_width == 0


def test_mc_reproducible():
    g = complete_graph(4)
    a = hitting_mc(g, 1, 2, trials=25_000, seed=11)
    b = hitting_mc(g, 1, 2, trials=25_000, seed=11)
    c = hitting_mc(g, 1, 2, trials=25_000, seed=12)
    assert a == b
    assert a.mean != c.mean


def test_mc_single_trial_and_errors():
    est = hitting_mc(complete_graph(3), 1, 2, trials=1, seed=0)
    assert est.half_width == float("inf")
    with pytest.raises(ValueError):
        hitting_mc(complete_graph(3), 1, 2, trials=0)
    with pytest.raises(Timeout) as info:
        hitting_mc(directed_cycle(5), 1, 5, trials=100, max_steps=2)
    assert info.value.censored == 100


def test_transition_rows_stochastic():
    from greenforest.walks import transition_matrix
    for g in digraph_corpus()[:20]:
        assert np.allclose(transition_matrix(g).sum(axis=1), 1)

"""Seeded random graph corpora shared by the test modules."""

import random
from functools import lru_cache

from greenforest.graph import (
    WeightedDigraph,
    directed_cycle,
    from_undirected,
    is_directed_cycle,
    is_strongly_connected,
)

CORPUS_SIZE = 200
CORPUS_SEED = 20240611


def random_digraph(rng, n, p=None):
    """Random strongly connected digraph on n vertices, weights in 1..5."""
    labels = [f"x{i}" for i in range(n)]
    while True:
        q = p if p is not None else rng.uniform(0.3, 0.8)
        edges = [(s, d, rng.randint(1, 5)) for s in labels for d in labels
                 if s != d and rng.random() < q]
        g = WeightedDigraph(labels, edges)
        if is_strongly_connected(g):
            return g


@lru_cache(maxsize=None)
def digraph_corpus():
    rng = random.Random(CORPUS_SEED)
    return tuple(random_digraph(rng, rng.randint(3, 7)) for _ in range(CORPUS_SIZE))


def small_corpus(max_n=6):
    return tuple(g for g in digraph_corpus() if g.n <= max_n)


@lru_cache(maxsize=None)
def cycles():
    return tuple(directed_cycle(n) for n in range(3, 9))


def random_simple_graph(rng, n):
    labels = list(range(n))
    while True:
        q = rng.uniform(0.3, 0.9)
        pairs = [(i, j) for i in labels for j in labels if i < j and rng.random() < q]
        g = from_undirected(labels, pairs)
        if is_strongly_connected(g):
            return g


@lru_cache(maxsize=None)
def simple_corpus(count=60):
    rng = random.Random(CORPUS_SEED + 1)
    return tuple(random_simple_graph(rng, rng.randint(2, 8)) for _ in range(count))


@lru_cache(maxsize=None)
def weighted_undirected_corpus(count=40):
    rng = random.Random(CORPUS_SEED + 2)
    out = []
    for _ in range(count):
        n = rng.randint(2, 7)
        base = random_simple_graph(rng, n)
        out.append(from_undirected(base.labels, [(s, d, rng.randint(1, 5))
                                                 for s, d, _ in base.edges() if s < d]))
    return tuple(out)


def non_cycles():
    return tuple(g for g in digraph_corpus() if not is_directed_cycle(g))

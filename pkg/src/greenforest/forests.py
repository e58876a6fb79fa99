"""Spanning trees and forests: brute-force enumeration and determinant sums.

Rooted forests here are *in-forests*: every non-root vertex has exactly one
out-edge and following out-edges leads to the root of its component.  With
``L = D - A`` built from out-degrees, deleting the rows of a root set and
the columns of a "membership" set gives, up to sign, a signed sum over such
forests (the all-minors matrix-tree theorem).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from .errors import (
    BadConstraint,
    NoSuchEdge,
    NotStronglyConnected,
    NotUndirected,
    TooLarge,
    TooSmall,
)
from .graph import combinatorial_laplacian, is_strongly_connected, is_undirected
from .linalg import det_exact, minor_det, subset_sign

DEFAULT_GUARD_N = 10
DEFAULT_GUARD_EDGES = 40


@dataclass(frozen=True)
class RootedSpanningForest:
    edges: tuple      # (src, dst) label pairs, sorted by vertex index
    roots: tuple      # root labels in vertex order
    root_of: tuple    # (vertex, root) label pairs in vertex order
    weight: Fraction

    @property
    def k(self):
        return len(self.roots)

    def component(self, root):
        return [v for v, r in self.root_of if r == root]

    def format(self):
        roots = ",".join(str(r) for r in self.roots)
        edges = ",".join(f"{s}->{d}" for s, d in self.edges)
        w = self.weight
        ws = str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"
        return f"roots=[{roots}] edges=[{edges}] weight={ws}"


@dataclass(frozen=True)
class UnrootedSpanningForest:
    edges: tuple        # (x, y) label pairs with index(x) < index(y)
    components: tuple   # tuples of labels, ordered by smallest vertex index
    weight: Fraction

    @property
    def k(self):
        return len(self.components)


def _check_guard(g, guard_n, guard_edges):
    if g.n > guard_n or g.num_edges > guard_edges:
        raise TooLarge(
            f"enumeration limited to n <= {guard_n} and |E| <= {guard_edges} "
            f"(graph has n={g.n}, |E|={g.num_edges})"
        )


def _root_map(succ, roots):
    """Follow successor pointers to roots; None if some pointer chain cycles."""
    n = len(succ)
    root_of = [None] * n
    for r in roots:
        root_of[r] = r
    for start in range(n):
        path = []
        i = start
        while root_of[i] is None:
            if len(path) > n:
                return None
            path.append(i)
            i = succ[i]
        r = root_of[i]
        for j in path:
            root_of[j] = r
    return root_of


def iter_rooted_forests(g, k):
    """Yield ``(succ, roots, root_of, weight)`` for every rooted spanning k-forest.

    ``succ[i]`` is the successor index of vertex ``i`` (``None`` for roots);
    ``root_of[i]`` is the root index of its component.  Index-based and
    unguarded; prefer :func:`enumerate_rooted_forests` at the API level.
    """
    n = g.n
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}")
    choices = [sorted(g.out_edges(i).items()) for i in range(n)]
    for roots in combinations(range(n), k):
        rootset = set(roots)
        movers = [i for i in range(n) if i not in rootset]
        if any(not choices[i] for i in movers):
            continue
        for pick in product(*(choices[i] for i in movers)):
            succ = [None] * n
            weight = Fraction(1)
            for i, (j, w) in zip(movers, pick):
                succ[i] = j
                weight *= w
            root_of = _root_map(succ, roots)
            if root_of is None:
                continue
            yield succ, roots, root_of, weight


def enumerate_rooted_forests(g, k, guard_n=DEFAULT_GUARD_N, guard_edges=DEFAULT_GUARD_EDGES):
    """All rooted spanning k-forests of ``g``, ordered by their edge sets."""
    _check_guard(g, guard_n, guard_edges)
    lab = g.labels
    out = []
    for succ, roots, root_of, weight in iter_rooted_forests(g, k):
        edges = tuple(sorted((i, j) for i, j in enumerate(succ) if j is not None))
        out.append((edges, roots, root_of, weight))
    out.sort(key=lambda t: (t[0], t[1]))
    return [
        RootedSpanningForest(
            edges=tuple((lab[i], lab[j]) for i, j in edges),
            roots=tuple(lab[r] for r in roots),
            root_of=tuple((lab[i], lab[r]) for i, r in enumerate(root_of)),
            weight=weight,
        )
        for edges, roots, root_of, weight in out
    ]


def enumerate_unrooted_forests(g, k, guard_n=DEFAULT_GUARD_N, guard_edges=DEFAULT_GUARD_EDGES):
    """All spanning k-forests of an undirected graph (each edge used once)."""
    if not is_undirected(g):
        raise NotUndirected("unrooted forests need an undirected graph")
    _check_guard(g, guard_n, guard_edges)
    n = g.n
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}")
    undirected = [(i, j, w) for (i, j), w in g.edge_items() if i < j]
    need = n - k
    found = []

    def find(parent, i):
        while parent[i] != i:
            i = parent[i]
        return i

    def walk(pos, chosen, parent, weight):
        if len(chosen) == need:
            found.append((tuple(chosen), parent[:], weight))
            return
        if len(undirected) - pos < need - len(chosen):
            return
        i, j, w = undirected[pos]
        ri, rj = find(parent, i), find(parent, j)
        if ri != rj:
            saved = parent[:]
            parent[max(ri, rj)] = min(ri, rj)
            chosen.append((i, j))
            walk(pos + 1, chosen, parent, weight * w)
            chosen.pop()
            parent[:] = saved
        walk(pos + 1, chosen, parent, weight)

    walk(0, [], list(range(n)), Fraction(1))
    lab = g.labels
    result = []
    for edges, parent, weight in found:
        comps = {}
        for v in range(n):
            comps.setdefault(find(parent, v), []).append(v)
        components = tuple(sorted((tuple(c) for c in comps.values()), key=lambda c: c[0]))
        result.append(UnrootedSpanningForest(
            edges=tuple((lab[i], lab[j]) for i, j in edges),
            components=tuple(tuple(lab[v] for v in c) for c in components),
            weight=weight,
        ))
    return result


# -- determinant engines ---------------------------------------------------

@lru_cache(maxsize=256)
def laplacian(g):
    return combinatorial_laplacian(g)


def _require_strong(g):
    if not is_strongly_connected(g):
        raise NotStronglyConnected("graph is not strongly connected")


@lru_cache(maxsize=256)
def tau_vector(g):
    """In-tree weights (tau_u) for every vertex, as principal minors of L."""
    lap = laplacian(g)
    return tuple(minor_det(lap, {i}, {i}) for i in range(g.n))


def tau_root(g, u):
    """Total weight of spanning in-trees rooted at ``u``."""
    _require_strong(g)
    return tau_vector(g)[g.index(u)]


def tau_undirected(g):
    """Total weight of spanning trees of an undirected graph."""
    if not is_undirected(g):
        raise NotUndirected("tau of an undirected graph requested for a digraph")
    return minor_det(laplacian(g), {0}, {0}) if g.n else Fraction(0)


def _pos_without(i, removed):
    """1-based position of index ``i`` once index ``removed`` is dropped."""
    return i + 1 - (removed < i)


@lru_cache(maxsize=65536)
def _bracket_idx(g, v, b, u, a):
    lap = laplacian(g)
    n = g.n
    det = minor_det(lap, {v, b}, {u, a})
    if det == 0:
        return det
    sign = (subset_sign(n, [u + 1]) * subset_sign(n, [v + 1])
            * subset_sign(n - 1, [_pos_without(a, u)])
            * subset_sign(n - 1, [_pos_without(b, v)]))
    return sign * det


def forest_bracket(g, v, b, u, a):
    """Signed two-root forest sum for roots v, b and members u, a.

    Returns ``X - Y`` where ``X`` sums the weights of rooted spanning
    2-forests with root ``v`` reaching ``u`` and root ``b`` reaching ``a``,
    and ``Y`` those with the assignment crossed.  This is the single
    determinant ``sgn(u) sgn(v) sgn'(a) sgn'(b) det L[V-{v,b}, V-{u,a}]``
    that the Green's function formulas consume.
    """
    vi, bi, ui, ai = (g.index(x) for x in (v, b, u, a))
    if vi == bi or ui == ai:
        raise BadConstraint("roots and members must each be distinct")
    return _bracket_idx(g, vi, bi, ui, ai)


@lru_cache(maxsize=65536)
def _intree_weight_on(g, subset, root):
    """Weight of in-trees of the induced subgraph on ``subset`` rooted at ``root``."""
    members = sorted(subset)
    pos = {x: k for k, x in enumerate(members)}
    m = len(members)
    rows = [[Fraction(0)] * m for _ in range(m)]
    for x in members:
        for y, w in g.out_edges(x).items():
            if y in pos:
                rows[pos[x]][pos[y]] -= w
                rows[pos[x]][pos[x]] += w
    r = pos[root]
    return det_exact([row[:r] + row[r + 1:] for k, row in enumerate(rows) if k != r])


def _split_sum(g, v, b, u, a):
    """Sum over vertex splits S | V-S with b, a in S and v, u outside."""
    n = g.n
    fixed_in, fixed_out = {b, a}, {v, u}
    free = [x for x in range(n) if x not in fixed_in and x not in fixed_out]
    total = Fraction(0)
    for r in range(len(free) + 1):
        for extra in combinations(free, r):
            side = frozenset(fixed_in.union(extra))
            t_b = _intree_weight_on(g, side, b)
            if t_b == 0:
                continue
            other = frozenset(x for x in range(n) if x not in side)
            total += t_b * _intree_weight_on(g, other, v)
    return total


def forest_sum_2(g, v, b, u, a):
    """Weight of rooted spanning 2-forests with roots v, b, u in v's tree, a in b's.

    When the crossed assignment is impossible (``u`` is the root ``v`` or
    ``a`` is the root ``b``) this is a single signed minor of L.  Otherwise
    one determinant only fixes the difference with the crossed sum, so the
    value is assembled from vertex splits, each contributing the product of
    the in-tree weights of the two induced halves.
    """
    vi, bi, ui, ai = (g.index(x) for x in (v, b, u, a))
    if vi == bi:
        raise BadConstraint("the two roots must differ")
    if ui == bi:
        raise BadConstraint("u cannot lie in the tree of v when it is the other root")
    if ai == vi:
        raise BadConstraint("a cannot lie in the tree of b when it is the other root")
    if ui == ai:
        return Fraction(0)
    if ui == vi or ai == bi:
        return _bracket_idx(g, vi, bi, ui, ai)
    return _split_sum(g, vi, bi, ui, ai)


@lru_cache(maxsize=256)
def two_forest_weights(g):
    """Matrix W[x][y] = weight of rooted 2-forests with root set {x, y}.

    For an undirected graph this is also the weight of unrooted 2-forests
    separating x from y.  The diagonal is zero.
    """
    n = g.n
    lap = laplacian(g)
    w = [[Fraction(0)] * n for _ in range(n)]
    for x, y in combinations(range(n), 2):
        w[x][y] = w[y][x] = minor_det(lap, {x, y}, {x, y})
    return tuple(tuple(r) for r in w)


def rooted_2forest_total(g):
    """Total weight of all rooted spanning 2-forests (a count for unit weights)."""
    if g.n < 2:
        raise TooSmall("no spanning 2-forest exists on fewer than 2 vertices")
    w = two_forest_weights(g)
    return sum((w[x][y] for x, y in combinations(range(g.n), 2)), Fraction(0))


def tau_edge(g, u, v):
    """Weight of spanning trees of an undirected graph that contain edge {u, v}."""
    if not is_undirected(g):
        raise NotUndirected("tau_edge needs an undirected graph")
    if not g.has_edge(u, v):
        raise NoSuchEdge(f"no edge {{{u!r}, {v!r}}}")
    return tau_undirected(g) - tau_undirected(g.without_edge(u, v, both=True))

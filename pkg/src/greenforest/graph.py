"""Weighted digraphs: data model, ingestion, and standard example graphs."""

import json
from collections import deque
from fractions import Fraction

from .errors import (
    BadOrder,
    BadWeight,
    DuplicateEdge,
    NoSuchEdge,
    ParseError,
    SelfLoop,
)
from .linalg import RationalMatrix


def to_weight(value):
    """Parse an integer, ``p/q`` or decimal literal into an exact Fraction."""
    if isinstance(value, Fraction):
        w = value
    elif isinstance(value, bool):
        raise BadWeight(f"not a weight: {value!r}")
    elif isinstance(value, int):
        w = Fraction(value)
    elif isinstance(value, float):
        # go through repr so 0.1 means one tenth, not the binary expansion
        w = Fraction(repr(value))
    elif isinstance(value, str):
        try:
            w = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise BadWeight(f"not a weight: {value!r}") from exc
    else:
        raise BadWeight(f"not a weight: {value!r}")
    if w <= 0:
        raise BadWeight(f"weights must be positive, got {value!r}")
    return w


class WeightedDigraph:
    """Immutable weighted digraph with a fixed total order on its vertices.

    ``labels`` is the vertex order; edges map ``(src, dst)`` label pairs to
    positive Fractions.  Absent pairs have weight zero.
    """

    __slots__ = ("labels", "_index", "_weights", "_out", "_hash", "__weakref__")

    def __init__(self, labels, edges=()):
        labels = tuple(labels)
        index = {}
        for i, lab in enumerate(labels):
            if lab in index:
                raise BadOrder(f"vertex {lab!r} listed twice")
            index[lab] = i
        weights = {}
        items = edges.items() if isinstance(edges, dict) else edges
        for item in items:
            if len(item) == 2 and isinstance(item[0], tuple):
                (src, dst), w = item
            elif len(item) == 2:
                (src, dst), w = item, 1
            else:
                src, dst, w = item
            if src not in index or dst not in index:
                raise BadOrder(f"edge ({src!r}, {dst!r}) uses an undeclared vertex")
            if src == dst:
                raise SelfLoop(f"self-loop at {src!r}")
            key = (index[src], index[dst])
            if key in weights:
                raise DuplicateEdge(f"duplicate edge ({src!r}, {dst!r})")
            weights[key] = to_weight(w)
        out = [dict() for _ in labels]
        for (i, j), w in sorted(weights.items()):
            out[i][j] = w
        self.labels = labels
        self._index = index
        self._weights = dict(sorted(weights.items()))
        self._out = tuple(out)
        self._hash = None

    # -- basic access -----------------------------------------------------

    @property
    def n(self):
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"no vertex {label!r}") from None

    def weight(self, src, dst):
        """Weight of the edge between two labels; zero when absent."""
        return self._weights.get((self.index(src), self.index(dst)), Fraction(0))

    def w(self, i, j):
        """Weight by 0-based indices."""
        return self._weights.get((i, j), Fraction(0))

    def out_edges(self, i):
        """Mapping successor index -> weight for vertex index ``i``."""
        return self._out[i]

    def edge_items(self):
        """Sorted ``((i, j), w)`` pairs by index."""
        return self._weights.items()

    def edges(self):
        """List of ``(src_label, dst_label, weight)`` in index order."""
        return [(self.labels[i], self.labels[j], w) for (i, j), w in self._weights.items()]

    @property
    def num_edges(self):
        return len(self._weights)

    def has_edge(self, src, dst):
        return (self.index(src), self.index(dst)) in self._weights

    def __eq__(self, other):
        if not isinstance(other, WeightedDigraph):
            return NotImplemented
        return self.labels == other.labels and self._weights == other._weights

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.labels, tuple(self._weights.items())))
        return self._hash

    def __repr__(self):
        return f"WeightedDigraph(n={self.n}, edges={self.num_edges})"

    # -- derived quantities -----------------------------------------------

    def degrees(self):
        """Out-degrees d_u as Fractions, in vertex order."""
        return [sum(o.values(), Fraction(0)) for o in self._out]

    def volume(self, vertices=None):
        d = self.degrees()
        if vertices is None:
            return sum(d, Fraction(0))
        return sum((d[self.index(v)] for v in vertices), Fraction(0))

    def without_edge(self, src, dst, both=False):
        """Copy with edge (src, dst) removed (and (dst, src) if ``both``)."""
        i, j = self.index(src), self.index(dst)
        drop = {(i, j), (j, i)} if both else {(i, j)}
        if (i, j) not in self._weights:
            raise NoSuchEdge(f"no edge ({src!r}, {dst!r})")
        kept = [((self.labels[a], self.labels[b]), w)
                for (a, b), w in self._weights.items() if (a, b) not in drop]
        return WeightedDigraph(self.labels, kept)

    def induced(self, indices):
        """Induced subgraph on the given 0-based vertex indices (order kept)."""
        keep = sorted(indices)
        pos = set(keep)
        labels = [self.labels[i] for i in keep]
        kept = [((self.labels[a], self.labels[b]), w)
                for (a, b), w in self._weights.items() if a in pos and b in pos]
        return WeightedDigraph(labels, kept)


def from_undirected(labels, edges):
    """Symmetric digraph: each undirected edge becomes two directed edges."""
    directed = []
    for item in edges:
        src, dst, *rest = item
        w = rest[0] if rest else 1
        directed.append((src, dst, w))
        directed.append((dst, src, w))
    return WeightedDigraph(labels, directed)


# -- structural predicates --------------------------------------------------

def _reachable(g, start, skip=None):
    seen = {start}
    queue = deque([start])
    while queue:
        i = queue.popleft()
        for j in g.out_edges(i):
            if j != skip and j not in seen:
                seen.add(j)
                queue.append(j)
    return seen


def reachable_avoiding(g, start, avoid):
    """Indices reachable from ``start`` along edges, never entering ``avoid``."""
    return _reachable(g, start, skip=avoid)


def is_strongly_connected(g):
    n = g.n
    if n == 0:
        return False
    if len(_reachable(g, 0)) != n:
        return False
    rev = [[] for _ in range(n)]
    for (i, j), _ in g.edge_items():
        rev[j].append(i)
    seen = {0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in rev[i]:
            if j not in seen:
                seen.add(j)
                queue.append(j)
    return len(seen) == n


def is_undirected(g):
    return all(g.w(j, i) == w for (i, j), w in g.edge_items())


def is_simple(g):
    """Undirected with every weight exactly 1."""
    return is_undirected(g) and all(w == 1 for _, w in g.edge_items())


def is_directed_cycle(g):
    """Strongly connected and every vertex has exactly one out-edge."""
    return g.n >= 2 and all(len(g.out_edges(i)) == 1 for i in range(g.n)) and \
        is_strongly_connected(g)


def bfs_distances(g, start):
    """Unweighted shortest-path lengths from index ``start`` (dict index -> int)."""
    dist = {start: 0}
    queue = deque([start])
    while queue:
        i = queue.popleft()
        for j in g.out_edges(i):
            if j not in dist:
                dist[j] = dist[i] + 1
                queue.append(j)
    return dist


def shortest_path(g, start, end):
    """One unweighted shortest path as a list of indices, or None."""
    prev = {start: None}
    queue = deque([start])
    while queue:
        i = queue.popleft()
        if i == end:
            break
        for j in g.out_edges(i):
            if j not in prev:
                prev[j] = i
                queue.append(j)
    if end not in prev:
        return None
    path = [end]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    return path[::-1]


def diameter(g):
    """Largest unweighted shortest-path distance over ordered pairs."""
    best = 0
    for i in range(g.n):
        dist = bfs_distances(g, i)
        if len(dist) < g.n:
            return float("inf")
        best = max(best, max(dist.values()))
    return best


def combinatorial_laplacian(g):
    """L = D - A in vertex order."""
    n = g.n
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j, w in g.out_edges(i).items():
            rows[i][j] -= w
            rows[i][i] += w
    return RationalMatrix(rows, n)


# -- parsing and serialization ----------------------------------------------

def parse_edge_list(text):
    order = None
    seen = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("order:"):
            if order is not None or edges:
                raise ParseError("order header must come first and only once", lineno)
            order = line.split(":", 1)[1].split()
            if len(set(order)) != len(order):
                raise ParseError("repeated vertex in order header", lineno)
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ParseError(f"expected 'src dst [weight]', got {raw.strip()!r}", lineno)
        src, dst = parts[0], parts[1]
        try:
            w = to_weight(parts[2]) if len(parts) == 3 else Fraction(1)
        except BadWeight as exc:
            raise BadWeight(f"line {lineno}: {exc}") from None
        if src == dst:
            raise SelfLoop(f"line {lineno}: self-loop at {src!r}")
        if (src, dst) in seen:
            raise DuplicateEdge(f"line {lineno}: duplicate edge ({src!r}, {dst!r}), "
                                f"first on line {seen[src, dst]}")
        seen[src, dst] = lineno
        edges.append((src, dst, w))
    if order is None:
        order = []
        for src, dst, _ in edges:
            for v in (src, dst):
                if v not in order:
                    order.append(v)
    else:
        declared = set(order)
        for src, dst, _ in edges:
            for v in (src, dst):
                if v not in declared:
                    raise ParseError(f"vertex {v!r} missing from order header")
    return WeightedDigraph(order, edges)


def parse_json(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    if not isinstance(data, dict) or "edges" not in data:
        raise ParseError("expected an object with an 'edges' list")
    undirected = bool(data.get("undirected", False))
    edges = []
    for k, e in enumerate(data["edges"]):
        if not isinstance(e, dict) or "src" not in e or "dst" not in e:
            raise ParseError(f"edge #{k} needs 'src' and 'dst'")
        edges.append((str(e["src"]), str(e["dst"]), to_weight(e.get("w", 1))))
    if "vertices" in data:
        labels = [str(v) for v in data["vertices"]]
    else:
        labels = []
        for src, dst, _ in edges:
            for v in (src, dst):
                if v not in labels:
                    labels.append(v)
    if undirected:
        pairs = set()
        for src, dst, _ in edges:
            if src == dst:
                raise SelfLoop(f"self-loop at {src!r}")
            if frozenset((src, dst)) in pairs:
                raise DuplicateEdge(f"duplicate undirected edge {{{src!r}, {dst!r}}}")
            pairs.add(frozenset((src, dst)))
        return from_undirected(labels, edges)
    return WeightedDigraph(labels, edges)


def parse_graph(text, format="edge-list"):
    """Parse a graph from text in ``edge-list`` or ``json`` format."""
    if format in ("edge-list", "edges", "edgelist"):
        return parse_edge_list(text)
    if format == "json":
        return parse_json(text)
    raise ValueError(f"unknown graph format {format!r}")


def format_weight(w):
    return str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"


def to_edge_list(g):
    lines = ["order: " + " ".join(str(v) for v in g.labels)]
    lines += [f"{s} {d} {format_weight(w)}" for s, d, w in g.edges()]
    return "\n".join(lines) + "\n"


def to_json(g):
    return json.dumps({
        "vertices": [str(v) for v in g.labels],
        "edges": [{"src": str(s), "dst": str(d), "w": format_weight(w)} for s, d, w in g.edges()],
        "undirected": False,
    })


# -- example graphs ---------------------------------------------------------

def complete_graph(n):
    labels = list(range(1, n + 1))
    return WeightedDigraph(labels, [(i, j, 1) for i in labels for j in labels if i != j])


def directed_cycle(n, weights=None):
    labels = list(range(1, n + 1))
    weights = weights or [1] * n
    return WeightedDigraph(labels, [(labels[i], labels[(i + 1) % n], weights[i])
                                    for i in range(n)])


def path_graph(n):
    labels = list(range(1, n + 1))
    return from_undirected(labels, [(i, i + 1) for i in range(1, n)])


def gamma_graph(n):
    """The unit-weight digraph on v1..vn with chain, back, and closing edges."""
    if n < 3:
        raise BadOrder(f"gamma_graph needs n >= 3, got {n}")
    v = [f"v{i}" for i in range(1, n + 1)]
    edges = [(v[i], v[i + 1]) for i in range(n - 1)]
    edges += [(v[j], v[i]) for j in range(n - 1) for i in range(j)]
    edges.append((v[n - 1], v[0]))
    return WeightedDigraph(v, [(s, d, 1) for s, d in edges])


def diamond_graph():
    """K4 minus the edge {a, d}: spectrum {0, 2, 4, 4}, eight spanning trees."""
    return from_undirected("abcd", [("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "d")])


def gamma2_graph():
    """Four-vertex unit digraph with in-tree counts (2, 2, 1, 1) at a, b, c, d."""
    return WeightedDigraph("abcd", [("a", "c", 1), ("b", "a", 1), ("c", "b", 1),
                                    ("c", "d", 1), ("d", "b", 1)])

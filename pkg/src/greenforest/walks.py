"""Random-walk functionals: hitting, commute and return times, Kemeny's
constant, effective resistance, and hitting-time bounds.

Exact values are Fractions computed from forest sums; ``hitting_solve`` and
the Monte Carlo estimators are independent numeric checks.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import NoSuchEdge, NotSimple, NotStronglyConnected, NotUndirected, Timeout
from .forests import (
    _bracket_idx,
    tau_edge,
    tau_undirected,
    tau_vector,
    two_forest_weights,
)
from .graph import (
    combinatorial_laplacian,
    diameter,
    is_simple,
    is_strongly_connected,
    is_undirected,
    reachable_avoiding,
    shortest_path,
)
from .greens import _green_combinatorial, _normalized_kernel, _stationary, trace_green_normalized
from .linalg import RationalMatrix, minor_det

INF = float("inf")


def _require(g):
    if not is_strongly_connected(g):
        raise NotStronglyConnected("graph is not strongly connected")


# -- exact hitting times ------------------------------------------------------

def _hitting_digraph(g, u, v):
    # sum over the far root b of d_b times the weight of 2-forests rooted at
    # {v, b} in which u drains to b
    d = g.degrees()
    total = Fraction(0)
    for b in range(g.n):
        if b != v:
            total += d[b] * _bracket_idx(g, v, b, v, u)
    return total / tau_vector(g)[v]


def _hitting_undirected(g, u, v):
    # 2-forests separating v from {u, b}, resolved from pairwise separations
    d = g.degrees()
    sep = two_forest_weights(g)
    total = Fraction(0)
    for b in range(g.n):
        total += d[b] * (sep[u][v] + sep[b][v] - sep[u][b])
    return total / (2 * tau_vector(g)[0])


@lru_cache(maxsize=128)
def _hitting_table(g, method):
    n = g.n
    fn = _hitting_undirected if method == "undirected" else _hitting_digraph
    return RationalMatrix([[Fraction(0) if u == v else fn(g, u, v) for v in range(n)]
                           for u in range(n)], n)


def _method(g, method):
    if method == "auto":
        return "undirected" if is_undirected(g) else "digraph"
    if method == "undirected" and not is_undirected(g):
        raise NotUndirected("undirected hitting formula requested for a digraph")
    if method not in ("digraph", "undirected"):
        raise ValueError(f"unknown method {method!r}")
    return method


def hitting_exact(g, u, v, method="auto"):
    """Exact expected hitting time H(u, v); zero when u == v."""
    _require(g)
    i, j = g.index(u), g.index(v)
    if i == j:
        return Fraction(0)
    return _hitting_table(g, _method(g, method))[i, j]


@dataclass(frozen=True)
class HittingMatrix:
    labels: tuple
    matrix: RationalMatrix

    def __getitem__(self, uv):
        u, v = uv
        return self.matrix[self.labels.index(u), self.labels.index(v)]


def hitting_matrix(g, method="auto"):
    _require(g)
    return HittingMatrix(g.labels, _hitting_table(g, _method(g, method)))


def hitting_edge_exact(g, u, v):
    """H(u, v) from in-trees containing the edge (v, u).

    In-trees rooted at b that contain (v, u) are counted by deleting the
    edge and subtracting.
    """
    _require(g)
    i, j = g.index(u), g.index(v)
    w = g.w(j, i)
    if w == 0:
        raise NoSuchEdge(f"no edge ({v!r}, {u!r})")
    lap_without = combinatorial_laplacian(g.without_edge(v, u))
    tau = tau_vector(g)
    d = g.degrees()
    total = Fraction(0)
    for b in range(g.n):
        if b != j:
            total += d[b] * (tau[b] - minor_det(lap_without, {b}, {b}))
    return total / (tau[j] * w)


def transition_matrix(g):
    d = np.array([float(x) for x in g.degrees()])
    a = np.zeros((g.n, g.n))
    for (i, j), w in g.edge_items():
        a[i, j] = float(w)
    return a / d[:, None]


def hitting_solve(g, v):
    """Float hitting times to ``v`` from every vertex by first-step analysis."""
    _require(g)
    j = g.index(v)
    p = transition_matrix(g)
    keep = [i for i in range(g.n) if i != j]
    system = np.eye(len(keep)) - p[np.ix_(keep, keep)]
    try:
        if keep and np.linalg.cond(system) > 1e12:
            raise np.linalg.LinAlgError("singular")
        sol = np.linalg.solve(system, np.ones(len(keep))) if keep else np.zeros(0)
    except np.linalg.LinAlgError:
        raise NotStronglyConnected(f"{v!r} is not reachable from every vertex") from None
    h = np.zeros(g.n)
    h[keep] = sol
    return h


# -- derived quantities ---------------------------------------------------------

def commute_exact(g, u, v):
    """Commute time H(u, v) + H(v, u), cross-checked against closed forms when undirected."""
    _require(g)
    value = hitting_exact(g, u, v, "digraph") + hitting_exact(g, v, u, "digraph")
    if is_undirected(g) and u != v:
        i, j = g.index(u), g.index(v)
        tau = tau_vector(g)[0]
        vol = g.volume()
        forms = [vol * two_forest_weights(g)[i][j] / tau]
        if g.w(i, j):
            forms.append(tau_edge(g, u, v) * vol / (tau * g.w(i, j)))
        for f in forms:
            if f != value:
                raise ArithmeticError(f"commute time mismatch: {value} vs {f}")
    return value


def return_time(g, v):
    """Expected return time to ``v``; equals 1 / pi_v."""
    _require(g)
    j = g.index(v)
    value = 1 / _stationary(g).pi[j]
    d = g.degrees()[j]
    first_step = 1 + sum((w / d * hitting_exact(g, g.labels[i], v, "digraph")
                          for i, w in g.out_edges(j).items()), Fraction(0))
    if first_step != value:
        raise ArithmeticError(f"return time mismatch: {value} vs {first_step}")
    return value


def kemeny_by_start(g):
    """sum_v H(u, v) pi_v for every start vertex u (all equal)."""
    _require(g)
    pi = _stationary(g).pi
    h = _hitting_table(g, "digraph")
    return [sum((h[u, v] * pi[v] for v in range(g.n)), Fraction(0)) for u in range(g.n)]


def kemeny(g):
    """Kemeny's constant, checked for start independence and against Tr of the normalized Green's function."""
    values = kemeny_by_start(g)
    if len(set(values)) != 1:
        raise ArithmeticError(f"Kemeny's constant depends on the start vertex: {values}")
    if g.n >= 2:
        trace = trace_green_normalized(g)
        if trace != values[0]:
            raise ArithmeticError(f"Kemeny {values[0]} differs from normalized trace {trace}")
    return values[0]


def hitting_sum_identity(g):
    """(sum of all hitting times, vol * n * Tr G) for a connected simple graph."""
    if not is_simple(g):
        raise NotSimple("identity holds for simple graphs (undirected, unit weights)")
    _require(g)
    h = _hitting_table(g, "digraph")
    n = g.n
    total = sum((h[u, v] for u in range(n) for v in range(n)), Fraction(0))
    return total, g.volume() * n * _green_combinatorial(g).trace()


def effective_resistance(g, u, v):
    """Effective resistance from the combinatorial Green's function.

    On edges the spanning-tree ratio ``tau_e / (tau w(e))`` is computed too
    and must agree.
    """
    if not is_undirected(g):
        raise NotUndirected("effective resistance needs an undirected graph")
    _require(g)
    i, j = g.index(u), g.index(v)
    gm = _green_combinatorial(g)
    value = gm[i, i] + gm[j, j] - gm[i, j] - gm[j, i]
    if i != j and g.w(i, j):
        edge_form = tau_edge(g, u, v) / (tau_undirected(g) * g.w(i, j))
        if edge_form != value:
            raise ArithmeticError(f"resistance mismatch: {value} vs {edge_form}")
    return value


def normalized_hitting(g, u, v):
    """H(u, v) read off the rational normalized kernel: K(v, v) - K(u, v)."""
    _require(g)
    k = _normalized_kernel(g)
    i, j = g.index(u), g.index(v)
    return k[j, j] - k[i, j]


# -- bounds ---------------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    name: str
    lhs: object
    relation: str   # "<=", ">=" or "=="
    rhs: object
    pair: tuple = None
    informational: bool = False

    @property
    def passed(self):
        if self.relation == "<=":
            return self.lhs <= self.rhs
        if self.relation == ">=":
            return self.lhs >= self.rhs
        return self.lhs == self.rhs

    @property
    def tight(self):
        return self.lhs == self.rhs


@dataclass
class WalkReport:
    kemeny: Fraction
    return_times: dict
    resistances: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)

    @property
    def all_passed(self):
        return all(v.passed for v in self.verdicts if not v.informational)

    def failures(self):
        return [v for v in self.verdicts if not v.informational and not v.passed]


def _max_ratio(g, sources, v):
    d = g.degrees()
    best = Fraction(0)
    for b in sources:
        w = g.w(b, v)
        if w == 0:
            return INF
        best = max(best, d[b] / w)
    return best


def check_bounds(g):
    """Evaluate every applicable hitting-time and Kemeny bound on ``g``."""
    _require(g)
    n = g.n
    lab = g.labels
    h = _hitting_table(g, "digraph")
    pi = _stationary(g).pi
    d = g.degrees()
    kappa = kemeny(g)
    report = WalkReport(kemeny=kappa,
                        return_times={lab[v]: 1 / pi[v] for v in range(n)})
    add = report.verdicts.append

    add(Verdict("kemeny-lower", kappa, ">=", Fraction(n - 1, 2)))
    crude = Fraction(n) ** n
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            pair = (lab[u], lab[v])
            if g.w(v, u):
                add(Verdict("hitting-edge", h[u, v], "<=",
                            d[v] / g.w(v, u) * (1 / pi[v] - 1), pair))
            reach = reachable_avoiding(g, u, v)
            add(Verdict("hitting-reach", h[u, v], "<=", _max_ratio(g, reach, v), pair))
            add(Verdict("hitting-crude", h[u, v], "<=", crude, pair))

    if is_undirected(g) and n >= 2:
        vol = g.volume()
        gm = _green_combinatorial(g)

        def reff(i, j):
            return gm[i, i] + gm[j, j] - gm[i, j] - gm[j, i]

        edges = [(i, j) for (i, j), _ in g.edge_items() if i < j]
        for i, j in edges:
            report.resistances[(lab[i], lab[j])] = reff(i, j)
        r_edge = {frozenset((i, j)): reff(i, j) for i, j in edges}
        r_max = max(r_edge.values())
        for u in range(n):
            for v in range(n):
                if u == v:
                    continue
                pair = (lab[u], lab[v])
                if g.w(u, v):
                    rhs = (vol - d[v]) * r_edge[frozenset((u, v))]
                    add(Verdict("resistance-edge", h[u, v], "<=", rhs, pair))
                    add(Verdict("resistance-edge-equality", h[u, v], "==", rhs, pair,
                                informational=True))
                else:
                    path = shortest_path(g, u, v)
                    worst = max(r_edge[frozenset(e)] for e in zip(path, path[1:]))
                    add(Verdict("resistance-path", h[u, v], "<=",
                                (len(path) - 1) * vol * worst, pair))
        h_max = max(h[u, v] for u in range(n) for v in range(n))
        add(Verdict("max-hitting", h_max, "<=", vol * diameter(g) * r_max))
    return report


# -- the gamma(n) family ------------------------------------------------------------

def gamma_lower_bound(n):
    """sum_{i=1}^{n-1} i * sum_{j=i}^{n-1} i^(j-i)."""
    return sum(i * sum(i ** (j - i) for j in range(i, n)) for i in range(1, n))


def gamma_sandwich(n):
    """(lower bound, exact H(v1, vn), n^n) on the gamma(n) digraph."""
    from .graph import gamma_graph

    g = gamma_graph(n)
    return gamma_lower_bound(n), hitting_exact(g, "v1", f"v{n}"), n ** n


# -- Monte Carlo --------------------------------------------------------------------

BLOCK = 10_000


@dataclass(frozen=True)
class McEstimate:
    mean: float
    half_width: float
    trials: int
    seed: int

    def covers(self, value, widths=3.0):
        return abs(self.mean - float(value)) <= widths * self.half_width


def default_max_steps(g):
    return math.ceil(1000 * g.n * (float(kemeny(g)) + 1))


def _simulate(g, starts, targets, trials, seed, max_steps):
    """Walk lengths from ``starts`` to ``targets``; both callables of (rng, size)."""
    cum = np.cumsum(transition_matrix(g), axis=1)
    cum[:, -1] = 1.0
    lengths = np.empty(trials, dtype=np.int64)
    children = np.random.SeedSequence(seed).spawn(math.ceil(trials / BLOCK))
    censored = 0
    for k, child in enumerate(children):
        rng = np.random.default_rng(child)
        size = min(BLOCK, trials - k * BLOCK)
        pos = starts(rng, size)
        tgt = targets(rng, size)
        steps = np.zeros(size, dtype=np.int64)
        active = pos != tgt
        t = 0
        while active.any() and t < max_steps:
            idx = np.nonzero(active)[0]
            r = rng.random(idx.size)
            nxt = (r[:, None] >= cum[pos[idx]]).sum(axis=1)
            pos[idx] = nxt
            steps[idx] += 1
            active[idx] = nxt != tgt[idx]
            t += 1
        censored += int(active.sum())
        lengths[k * BLOCK:k * BLOCK + size] = steps
    if censored:
        raise Timeout(censored, trials, max_steps)
    return lengths


def _estimate(lengths, seed):
    trials = lengths.size
    mean = float(lengths.mean())
    if trials > 1:
        half = 1.96 * float(lengths.std(ddof=1)) / math.sqrt(trials)
    else:
        half = INF
    return McEstimate(mean, half, trials, seed)


def hitting_mc(g, u, v, trials=100_000, seed=0, max_steps=None):
    """Monte Carlo estimate of H(u, v), reproducible from ``seed``."""
    if trials < 1:
        raise ValueError("trials must be positive")
    _require(g)
    if max_steps is None:
        max_steps = default_max_steps(g)
    i, j = g.index(u), g.index(v)
    lengths = _simulate(g, lambda rng, s: np.full(s, i), lambda rng, s: np.full(s, j),
                        trials, seed, max_steps)
    return _estimate(lengths, seed)


def kemeny_mc(g, u, trials=100_000, seed=0, max_steps=None):
    """Monte Carlo estimate of Kemeny's constant: walk from ``u`` to a pi-distributed target."""
    if trials < 1:
        raise ValueError("trials must be positive")
    _require(g)
    if max_steps is None:
        max_steps = default_max_steps(g)
    i = g.index(u)
    pi = _stationary(g).as_floats()
    pi = pi / pi.sum()
    n = g.n
    lengths = _simulate(g, lambda rng, s: np.full(s, i),
                        lambda rng, s: rng.choice(n, size=s, p=pi),
                        trials, seed, max_steps)
    return _estimate(lengths, seed)


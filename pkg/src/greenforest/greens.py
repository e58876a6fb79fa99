"""Green's functions of the combinatorial and normalized Laplacians.

Exact values come from two-root forest sums (signed minors of L); the
normalized Green's function is stored as the rational kernel
``K(u, v) = G_norm(u, v) / sqrt(pi_u pi_v)`` since the square-root factor
is irrational in general.  Float engines (pseudoinverses) live alongside
for cross-checking.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

from .errors import NotStronglyConnected, NotUndirected, TooSmall
from .forests import _bracket_idx, laplacian, tau_vector, two_forest_weights
from .graph import is_simple, is_strongly_connected, is_undirected
from .linalg import RationalMatrix, pinv_rank_one_correction, pinv_svd


@dataclass(frozen=True)
class StationaryDistribution:
    labels: tuple
    pi: tuple           # Fractions, vertex order
    normalizer: Fraction  # sum_w d_w tau_w

    def __getitem__(self, label):
        return self.pi[self.labels.index(label)]

    def as_floats(self):
        return np.array([float(p) for p in self.pi])


@dataclass(frozen=True)
class GreenKernel:
    kind: str           # "combinatorial" or "normalized-scaled"
    labels: tuple
    matrix: RationalMatrix

    def __getitem__(self, uv):
        u, v = uv
        return self.matrix[self.labels.index(u), self.labels.index(v)]

    def to_numpy(self):
        return self.matrix.to_numpy()


def _require(g, min_n=1):
    if not is_strongly_connected(g):
        raise NotStronglyConnected("graph is not strongly connected")
    if g.n < min_n:
        raise TooSmall(f"need at least {min_n} vertices")


@lru_cache(maxsize=256)
def _stationary(g):
    d = g.degrees()
    tau = tau_vector(g)
    norm = sum((di * ti for di, ti in zip(d, tau)), Fraction(0))
    if g.n == 1:
        return StationaryDistribution(g.labels, (Fraction(1),), norm)
    return StationaryDistribution(g.labels, tuple(di * ti / norm for di, ti in zip(d, tau)), norm)


def stationary(g):
    """Stationary distribution from in-tree weights: pi_u proportional to d_u tau_u."""
    _require(g)
    return _stationary(g)


def _bracket_sums(g, weight_a, weight_b):
    """M[u][v] = sum over a != u, b != v of weight_a[a] weight_b[b] bracket(v, b, u, a)."""
    n = g.n
    out = [[Fraction(0)] * n for _ in range(n)]
    for u in range(n):
        for v in range(n):
            total = Fraction(0)
            for b in range(n):
                if b == v or weight_b[b] == 0:
                    continue
                inner = Fraction(0)
                for a in range(n):
                    if a != u and weight_a[a] != 0:
                        inner += weight_a[a] * _bracket_idx(g, v, b, u, a)
                total += weight_b[b] * inner
            out[u][v] = total
    return out


@lru_cache(maxsize=128)
def _green_combinatorial(g):
    n = g.n
    tau = tau_vector(g)
    sums = _bracket_sums(g, [Fraction(1)] * n, tau)
    scale = n * sum((t * t for t in tau), Fraction(0))
    return RationalMatrix([[x / scale for x in row] for row in sums], n)


def green_combinatorial_exact(g):
    """Exact Moore-Penrose pseudoinverse of L from two-root forest sums."""
    _require(g, 2)
    return GreenKernel("combinatorial", g.labels, _green_combinatorial(g))


def green_combinatorial_undirected_exact(g):
    """Exact Green's function of an undirected graph from separating 2-forests.

    With ``S(x, y)`` the weight of spanning 2-forests separating x from y
    and ``s(x)`` its row sums, each 2-forest contributes through the sizes
    of its two trees, which collapses to::

        G(u, v) = (n (s(u) + s(v) - n S(u, v)) - sum_x s(x)) / (2 n^2 tau)
    """
    if not is_undirected(g):
        raise NotUndirected("undirected formula requested for a digraph")
    _require(g, 2)
    n = g.n
    sep = two_forest_weights(g)
    tau = tau_vector(g)[0]
    row = [sum(r, Fraction(0)) for r in sep]
    total = sum(row, Fraction(0))
    denom = 2 * n * n * tau
    rows = [[(n * (row[u] + row[v] - n * sep[u][v]) - total) / denom for v in range(n)]
            for u in range(n)]
    return GreenKernel("combinatorial", g.labels, RationalMatrix(rows, n))


@lru_cache(maxsize=128)
def _normalized_kernel(g):
    n = g.n
    pi = _stationary(g).pi
    tau = tau_vector(g)
    sums = _bracket_sums(g, pi, g.degrees())
    return RationalMatrix([[sums[u][v] / tau[v] for v in range(n)] for u in range(n)], n)


def green_normalized_scaled_exact(g):
    """Rational kernel K with normalized Green's function sqrt(pi_u pi_v) K(u, v)."""
    _require(g, 2)
    return GreenKernel("normalized-scaled", g.labels, _normalized_kernel(g))


def assemble_normalized(kernel, pi):
    """Float normalized Green's function from the rational kernel."""
    k = kernel.to_numpy()
    root = np.sqrt(np.array([float(p) for p in (pi.pi if hasattr(pi, "pi") else pi)]))
    return k * np.outer(root, root)


def normalized_laplacian(g):
    """Pi^{1/2} (I - P) Pi^{-1/2} as a float matrix."""
    _require(g)
    n = g.n
    pi = _stationary(g).as_floats()
    d = np.array([float(x) for x in g.degrees()])
    a = laplacian(g).to_numpy()
    i_minus_p = a / d[:, None]
    root = np.sqrt(pi)
    return (root[:, None] * i_minus_p) / root[None, :] if n else i_minus_p


def laplacian_kernels(g):
    """Unit left and right kernel vectors (x, y) of L."""
    pi = _stationary(g).as_floats()
    d = np.array([float(x) for x in g.degrees()])
    x = pi / d
    x /= np.linalg.norm(x)
    y = np.full(g.n, 1 / np.sqrt(g.n))
    return x, y


def green_combinatorial_float(g, method="svd"):
    """Numeric pseudoinverse of L (``svd`` or ``rank-one``)."""
    _require(g)
    lap = laplacian(g).to_numpy()
    if method == "svd":
        return pinv_svd(lap)
    x, y = laplacian_kernels(g)
    return pinv_rank_one_correction(lap, x, y)


def green_normalized_float(g, method="svd"):
    """Numeric pseudoinverse of the normalized Laplacian."""
    nl = normalized_laplacian(g)
    if method == "svd":
        return pinv_svd(nl)
    root = np.sqrt(_stationary(g).as_floats())
    return pinv_rank_one_correction(nl, root, root)


def trace_green_combinatorial(g):
    """Exact trace of the combinatorial Green's function.

    For simple graphs the closed form ``|rooted 2-forests| / (n tau)`` is
    used and checked against the diagonal of the exact matrix.
    """
    _require(g, 2)
    diag = _green_combinatorial(g).trace()
    if is_simple(g):
        sep = two_forest_weights(g)
        count = sum((sep[x][y] for x, y in combinations(range(g.n), 2)), Fraction(0))
        closed = count / (g.n * tau_vector(g)[0])
        if closed != diag:
            raise ArithmeticError(f"trace mismatch: closed form {closed} vs diagonal {diag}")
        return closed
    return diag


def trace_green_normalized(g, check=False):
    """Exact trace of the normalized Green's function.

    Sums ``d_x d_y`` times the weight of 2-forests rooted at {x, y}, over
    unordered root pairs, divided by ``sum_w d_w tau_w``.  The result is
    rational even though off-diagonal entries need not be.  With ``check``
    the diagonal of the exact kernel is compared as well.
    """
    _require(g, 2)
    d = g.degrees()
    sep = two_forest_weights(g)
    st = _stationary(g)
    s = sum((d[x] * d[y] * sep[x][y] for x, y in combinations(range(g.n), 2)), Fraction(0))
    value = s / st.normalizer
    if check:
        k = _normalized_kernel(g)
        diag = sum((st.pi[i] * k[i, i] for i in range(g.n)), Fraction(0))
        if diag != value:
            raise ArithmeticError(f"trace mismatch: closed form {value} vs diagonal {diag}")
    return value

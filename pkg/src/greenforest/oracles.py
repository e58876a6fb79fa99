"""Brute-force evaluations of the forest formulas by explicit enumeration.

These are the oracles of record: every quantity here is computed by
listing rooted spanning forests one by one, with no determinants involved.
All functions take and return 0-based indices and exact Fractions.
"""

from collections import defaultdict
from fractions import Fraction

from .forests import DEFAULT_GUARD_EDGES, DEFAULT_GUARD_N, _check_guard, iter_rooted_forests


class ForestTables:
    """Enumerated 1- and 2-forests of a small graph, indexed for fast sums."""

    def __init__(self, g, guard_n=DEFAULT_GUARD_N, guard_edges=DEFAULT_GUARD_EDGES):
        _check_guard(g, guard_n, guard_edges)
        self.g = g
        n = g.n
        self.n = n
        self.tau = [Fraction(0)] * n
        for _, roots, _, w in iter_rooted_forests(g, 1):
            self.tau[roots[0]] += w
        # (root_of tuple, weight) for every rooted 2-forest
        self.two = []
        if n >= 2:
            for _, roots, root_of, w in iter_rooted_forests(g, 2):
                self.two.append((roots, tuple(root_of), w))

    def total_2(self):
        return sum((w for _, _, w in self.two), Fraction(0))

    def constrained(self, v, b, u, a):
        """Weight of 2-forests rooted at {v, b} with u reaching v and a reaching b."""
        total = Fraction(0)
        roots_key = tuple(sorted((v, b)))
        for roots, root_of, w in self.two:
            if roots == roots_key and root_of[u] == v and root_of[a] == b:
                total += w
        return total

    def constrained_table(self):
        """All constrained sums at once: dict (v, b, u, a) -> weight."""
        table = defaultdict(Fraction)
        n = self.n
        for roots, root_of, w in self.two:
            for v, b in (roots, roots[::-1]):
                in_v = [x for x in range(n) if root_of[x] == v]
                in_b = [x for x in range(n) if root_of[x] == b]
                for u in in_v:
                    for a in in_b:
                        table[v, b, u, a] += w
        return table

    def hitting(self, u, v):
        """Expected hitting time from the 2-forest sum weighted by the far root's degree."""
        if u == v:
            return Fraction(0)
        d = self.g.degrees()
        total = Fraction(0)
        for roots, root_of, w in self.two:
            if v in roots and root_of[u] != v:
                total += d[root_of[u]] * w
        return total / self.tau[v]

    def green_combinatorial(self):
        """Combinatorial Green's function from the size-weighted 2-forest sums."""
        n = self.n
        scale = n * sum((t * t for t in self.tau), Fraction(0))
        g_mat = [[Fraction(0)] * n for _ in range(n)]
        for roots, root_of, w in self.two:
            sizes = {r: sum(1 for x in root_of if x == r) for r in roots}
            for v in roots:
                other = roots[0] if roots[1] == v else roots[1]
                for u in range(n):
                    if root_of[u] == v:
                        g_mat[u][v] += sizes[other] * self.tau[other] * w
                    else:
                        g_mat[u][v] -= sizes[v] * self.tau[other] * w
        return [[x / scale for x in row] for row in g_mat]

    def trace_normalized(self):
        d = self.g.degrees()
        norm = sum((d[i] * self.tau[i] for i in range(self.n)), Fraction(0))
        s = sum((d[r[0]] * d[r[1]] * w for r, _, w in self.two), Fraction(0))
        return s / norm

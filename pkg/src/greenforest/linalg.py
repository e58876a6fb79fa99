"""Exact rational determinants and floating-point pseudoinverses.

The exact side works on :class:`RationalMatrix`, a small immutable dense
matrix of :class:`fractions.Fraction`.  Determinants use fraction-free
(Bareiss) elimination after lifting the matrix to integers with a common
denominator, so no intermediate fraction ever grows.

The float side works on plain ``numpy`` arrays.
"""

from fractions import Fraction
from itertools import combinations
from math import lcm

import numpy as np

from .errors import KernelMismatch, ShapeError, SingularCorrection


class RationalMatrix:
    """Immutable dense matrix with exact rational entries (row-major)."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows, ncols=None):
        rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != ncols:
                raise ShapeError("ragged rows")
        self._rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def zeros(cls, nrows, ncols=None):
        ncols = nrows if ncols is None else ncols
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def rows(self):
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        return f"RationalMatrix({self.nrows}x{self.ncols})"

    def __add__(self, other):
        self._check_same(other)
        return RationalMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)],
            self.ncols,
        )

    def __sub__(self, other):
        self._check_same(other)
        return RationalMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)],
            self.ncols,
        )

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other._rows)) if other.nrows else [()] * other.ncols
        return RationalMatrix(
            [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols]
             for row in self._rows],
            other.ncols,
        )

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def transpose(self):
        return RationalMatrix([list(c) for c in zip(*self._rows)], self.nrows)

    T = property(transpose)

    def matvec(self, vec):
        return [sum((a * x for a, x in zip(row, vec)), Fraction(0)) for row in self._rows]

    def vecmat(self, vec):
        return [sum((x * self._rows[i][j] for i, x in enumerate(vec)), Fraction(0))
                for j in range(self.ncols)]

    def trace(self):
        if self.nrows != self.ncols:
            raise ShapeError("trace of a non-square matrix")
        return sum((self._rows[i][i] for i in range(self.nrows)), Fraction(0))

    def submatrix(self, rows, cols):
        return RationalMatrix([[self._rows[i][j] for j in cols] for i in rows], len(cols))

    def delete(self, rows=(), cols=()):
        """Return the matrix with the given row and column indices removed."""
        rows, cols = set(rows), set(cols)
        keep_r = [i for i in range(self.nrows) if i not in rows]
        keep_c = [j for j in range(self.ncols) if j not in cols]
        return self.submatrix(keep_r, keep_c)

    def tolist(self):
        return [list(r) for r in self._rows]

    def to_numpy(self):
        return np.array([[float(x) for x in r] for r in self._rows], dtype=float).reshape(
            self.nrows, self.ncols
        )


def _bareiss(a):
    """Determinant of a square integer matrix (list of lists, consumed)."""
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def det_exact(m):
    """Exact determinant of a square rational matrix.

    The 0x0 matrix has determinant 1.
    """
    rows = m.rows if isinstance(m, RationalMatrix) else [[Fraction(x) for x in r] for r in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ShapeError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    denom = 1
    for r in rows:
        for x in r:
            if x.denominator != 1:
                denom = lcm(denom, x.denominator)
    ints = [[x.numerator * (denom // x.denominator) for x in r] for r in rows]
    return Fraction(_bareiss(ints), denom**n)


def minor_det(m, delete_rows=(), delete_cols=()):
    """Determinant of ``m`` with the listed rows and columns removed (0-based)."""
    delete_rows, delete_cols = set(delete_rows), set(delete_cols)
    if len(delete_rows) != len(delete_cols):
        raise ShapeError("must delete equally many rows and columns")
    if m.nrows != m.ncols:
        raise ShapeError("minor of a non-square matrix")
    for i in delete_rows | delete_cols:
        if not 0 <= i < m.nrows:
            raise IndexError(f"index {i} out of range")
    return det_exact(m.delete(delete_rows, delete_cols))


def subset_sign(n, subset):
    """(-1) raised to the sum of the 1-based positions in ``subset``."""
    total = 0
    for i in subset:
        if not 1 <= i <= n:
            raise IndexError(f"position {i} not in 1..{n}")
        total += i
    return -1 if total % 2 else 1


def replace_columns(m, other, cols):
    """Copy of ``m`` whose ``cols`` columns are taken from ``other``."""
    if m.shape != other.shape:
        raise ShapeError("shape mismatch")
    cols = set(cols)
    return RationalMatrix(
        [[other[i, j] if j in cols else m[i, j] for j in range(m.ncols)]
         for i in range(m.nrows)],
        m.ncols,
    )


def column_replacement_sum(m, other):
    """Sum of det(m with columns C replaced from ``other``) over all subsets C.

    Equals ``det(m + other)``; exponential in the size, meant for checking.
    """
    n = m.ncols
    total = Fraction(0)
    for k in range(n + 1):
        for cols in combinations(range(n), k):
            total += det_exact(replace_columns(m, other, cols))
    return total


def cofactor_det(m):
    """Determinant by Laplace expansion along the first row (small matrices only)."""
    rows = m.rows if isinstance(m, RationalMatrix) else m
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j in range(n):
        if rows[0][j] == 0:
            continue
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * cofactor_det(sub)
    return total


# -- floating point -------------------------------------------------------

KERNEL_TOL = 1e-8


def pinv_svd(m):
    """Moore-Penrose pseudoinverse via the singular value decomposition.

    Singular values below ``max(shape) * eps * s_max`` are treated as zero.
    """
    m = np.asarray(m, dtype=float)
    if m.size == 0:
        return m.T.copy()
    u, s, vt = np.linalg.svd(m)
    cutoff = max(m.shape) * np.finfo(float).eps * (s[0] if s.size else 0.0)
    s_inv = np.zeros_like(s)
    nz = s > cutoff
    s_inv[nz] = 1.0 / s[nz]
    k = s.size
    return (vt[:k].T * s_inv) @ u[:, :k].T


def pinv_rank_one_correction(m, x, y):
    """Pseudoinverse of a rank n-1 matrix from its unit left/right kernels.

    Uses ``M+ = (M + x y^T)^{-1} - y x^T`` where ``x^T M = 0`` and ``M y = 0``.
    """
    m = np.asarray(m, dtype=float)
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    n = m.shape[0]
    if m.shape != (n, n) or x.shape != (n,) or y.shape != (n,):
        raise ShapeError("need a square matrix and kernel vectors of matching length")
    scale = max(np.abs(m).sum(axis=1).max(), 1.0)
    if abs(np.linalg.norm(x) - 1) > KERNEL_TOL or abs(np.linalg.norm(y) - 1) > KERNEL_TOL:
        raise KernelMismatch("kernel vectors must have unit length")
    if np.abs(x @ m).max() > KERNEL_TOL * scale:
        raise KernelMismatch("x is not a left kernel vector")
    if np.abs(m @ y).max() > KERNEL_TOL * scale:
        raise KernelMismatch("y is not a right kernel vector")
    corrected = m + np.outer(x, y)
    if np.linalg.cond(corrected) > 1 / (n * np.finfo(float).eps):
        raise SingularCorrection("M + x y^T is numerically singular")
    return np.linalg.inv(corrected) - np.outer(y, x)


def penrose_residuals(m, mp):
    """Max-abs residuals of the four Penrose conditions."""
    m = np.asarray(m, dtype=float)
    mp = np.asarray(mp, dtype=float)
    a = m @ mp
    b = mp @ m
    return (
        np.abs(a @ m - m).max(),
        np.abs(mp @ m @ mp - mp).max(),
        np.abs(a.T - a).max(),
        np.abs(b.T - b).max(),
    )

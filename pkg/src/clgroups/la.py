"""Dense matrices over a finite field.

:class:`Matrix` is an immutable wrapper around a 2-d numpy array of element
ints (see :mod:`clgroups.ff`).  The heavy loops (product, Gauss-Jordan,
determinant) live in :mod:`clgroups.kernels`.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .errors import ShapeMismatch, Singular
from .ff import GF


class Matrix:
    __slots__ = ("F", "a", "_hash")

    def __init__(self, F: GF, a, check=True):
        arr = np.array(a, dtype=F.dtype)
        if arr.ndim != 2:
            raise ShapeMismatch(f"expected a 2-d array, got shape {arr.shape}")
        if check and arr.size:
            lo, hi = int(arr.min()), int(arr.max())
            if lo < 0 or hi >= F.order:
                raise ValueError(f"entries must lie in [0, {F.order})")
        arr.setflags(write=False)
        self.F = F
        self.a = arr
        self._hash = None

    @classmethod
    def _wrap(cls, F, arr):
        m = cls.__new__(cls)
        arr.setflags(write=False)
        m.F, m.a, m._hash = F, arr, None
        return m

    # -- constructors
    @classmethod
    def zeros(cls, F, r, c=None):
        return cls._wrap(F, np.zeros((r, r if c is None else c), dtype=F.dtype))

    @classmethod
    def identity(cls, F, n):
        return cls._wrap(F, np.eye(n, dtype=np.int64).astype(F.dtype))

    @classmethod
    def diag(cls, F, entries):
        entries = list(entries)
        a = np.zeros((len(entries), len(entries)), dtype=F.dtype)
        for i, x in enumerate(entries):
            a[i, i] = x
        return cls._wrap(F, a)

    @classmethod
    def scalar(cls, F, n, c):
        return cls.diag(F, [c] * n)

    @classmethod
    def from_rows(cls, F, rows, ncols=None):
        rows = [list(r) for r in rows]
        if not rows:
            return cls.zeros(F, 0, ncols or 0)
        return cls(F, rows)

    @classmethod
    def permutation(cls, F, perm):
        """Row i of the result is e_{perm[i]}."""
        n = len(perm)
        a = np.zeros((n, n), dtype=F.dtype)
        for i, j in enumerate(perm):
            a[i, j] = 1
        return cls._wrap(F, a)

    # -- shape and access
    @property
    def rows(self):
        return self.a.shape[0]

    @property
    def cols(self):
        return self.a.shape[1]

    @property
    def shape(self):
        return self.a.shape

    def __getitem__(self, idx):
        if isinstance(idx, tuple) and len(idx) == 2 and all(
                isinstance(i, (int, np.integer)) for i in idx):
            return int(self.a[idx])
        r, c = idx if isinstance(idx, tuple) else (idx, slice(None))
        if isinstance(r, (int, np.integer)):
            r = slice(r, r + 1)
        if isinstance(c, (int, np.integer)):
            c = slice(c, c + 1)
        return Matrix._wrap(self.F, np.array(self.a[r, c], dtype=self.F.dtype))

    def row(self, i) -> list:
        return [int(x) for x in self.a[i]]

    def tolist(self):
        return [[int(x) for x in r] for r in self.a]

    def __repr__(self):
        return f"Matrix({self.F!r}, {self.tolist()})"

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.F is other.F and self.a.shape == other.a.shape
                and bool(np.array_equal(self.a, other.a)))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.F.p, self.F.n, self.a.shape, tuple(self.a.ravel().tolist())))
        return self._hash

    def is_zero(self):
        return not self.a.any()

    def is_identity(self):
        return self.rows == self.cols and bool(np.array_equal(self.a, np.eye(self.rows, dtype=np.int64)))

    def is_square(self):
        return self.rows == self.cols

    # -- arithmetic
    def _same(self, other):
        if self.F is not other.F:
            raise ShapeMismatch("matrices over different fields")

    def __matmul__(self, other):
        self._same(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix._wrap(self.F, np.asarray(kernels.matmul(self.F, self.a, other.a), dtype=self.F.dtype))

    def __add__(self, other):
        self._same(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix._wrap(self.F, self.F.vadd(self.a, other.a))

    def __sub__(self, other):
        self._same(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot subtract {other.shape} from {self.shape}")
        return Matrix._wrap(self.F, self.F.vsub(self.a, other.a))

    def __neg__(self):
        return Matrix._wrap(self.F, self.F.vneg(self.a))

    def scale(self, c: int):
        return Matrix._wrap(self.F, self.F.vscale(c, self.a))

    def scale_rows(self, cs):
        cs = np.array(cs, dtype=self.F.dtype)[:, None]
        return Matrix._wrap(self.F, self.F.vmul(cs, self.a))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        r = Matrix.identity(self.F, self.rows)
        b = self
        while e:
            if e & 1:
                r = r @ b
            b = b @ b
            e >>= 1
        return r

    @property
    def T(self):
        return Matrix._wrap(self.F, np.ascontiguousarray(self.a.T))

    def frob(self, e: int):
        """Entrywise x -> x^e (with e = q this is sigma on F_{q^2})."""
        return Matrix._wrap(self.F, self.F.vpow(self.a, e))

    # -- elimination
    def echelon(self):
        """(E, T, rank) with T invertible and T @ self = E in reduced row
        echelon form (pivot: first nonzero column, topmost row, scaled to 1)."""
        E, T, piv = kernels.rref(self.F, self.a, True)
        return Matrix._wrap(self.F, E), Matrix._wrap(self.F, T), len(piv)

    def rref(self):
        E, _, piv = kernels.rref(self.F, self.a, False)
        return Matrix._wrap(self.F, E), piv

    def rank(self):
        return len(kernels.rref(self.F, self.a, False)[2])

    def det(self):
        if not self.is_square():
            raise ShapeMismatch("determinant of a non-square matrix")
        return kernels.det(self.F, self.a)

    def inverse(self):
        if not self.is_square():
            raise ShapeMismatch("inverse of a non-square matrix")
        E, T, piv = kernels.rref(self.F, self.a, True)
        if len(piv) < self.rows:
            raise Singular("matrix is singular")
        return Matrix._wrap(self.F, T)

    def right_nullspace(self):
        """Rows spanning {v : self @ v^T = 0}; one basis vector per free
        column, with that free variable 1, other free variables 0."""
        F = self.F
        E, piv = self.rref()
        n = self.cols
        free = [j for j in range(n) if j not in set(piv)]
        out = np.zeros((len(free), n), dtype=F.dtype)
        for t, j in enumerate(free):
            out[t, j] = 1
            for r, pc in enumerate(piv):
                out[t, pc] = F.neg(int(E.a[r, j]))
        return Matrix._wrap(F, out)

    def left_nullspace(self):
        """Rows spanning {v : v @ self = 0}."""
        return self.T.right_nullspace()

    nullspace = left_nullspace


# -- block helpers


def block_diag(*ms: Matrix) -> Matrix:
    ms = [m for m in ms if m.rows or m.cols]
    F = ms[0].F
    r = sum(m.rows for m in ms)
    c = sum(m.cols for m in ms)
    a = np.zeros((r, c), dtype=F.dtype)
    i = j = 0
    for m in ms:
        a[i : i + m.rows, j : j + m.cols] = m.a
        i += m.rows
        j += m.cols
    return Matrix._wrap(F, a)


def hstack(*ms: Matrix) -> Matrix:
    return Matrix._wrap(ms[0].F, np.hstack([m.a for m in ms]).astype(ms[0].F.dtype))


def vstack(*ms: Matrix) -> Matrix:
    return Matrix._wrap(ms[0].F, np.vstack([m.a for m in ms]).astype(ms[0].F.dtype))


def outer(col: Matrix, row: Matrix) -> Matrix:
    F = col.F
    return Matrix._wrap(F, F.vmul(col.a.reshape(-1, 1), row.a.reshape(1, -1)))


# -- functional API


def mul(A: Matrix, B: Matrix) -> Matrix:
    return A @ B


def inverse(A: Matrix) -> Matrix:
    return A.inverse()


def det(A: Matrix) -> int:
    return A.det()


def echelon(A: Matrix):
    return A.echelon()


def nullspace(A: Matrix, side: str = "left") -> Matrix:
    if side == "left":
        return A.left_nullspace()
    if side == "right":
        return A.right_nullspace()
    raise ValueError("side must be 'left' or 'right'")


KINDS = ("symplectic", "unitary", "orthogonal")


def _q_of(F: GF) -> int:
    return F.p ** (F.n // 2)


def star(X: Matrix, kind: str) -> Matrix:
    """-X^T (symplectic), X^(sigma T) (unitary, X over F_{q^2}), X^T (orthogonal)."""
    if kind == "symplectic":
        return -X.T
    if kind == "unitary":
        return X.frob(_q_of(X.F)).T
    if kind in ("orthogonal", "quadratic"):
        return X.T
    raise ValueError(f"unknown kind {kind!r}")


def dagger(X: Matrix, kind: str) -> Matrix:
    """X^T in the symplectic case, X^* otherwise."""
    if kind == "symplectic":
        return X.T
    return star(X, kind)


def fold(A: Matrix) -> Matrix:
    """Upper-triangular representative of a quadratic matrix: entry (j, i),
    j > i, is added into (i, j)."""
    F = A.F
    up = np.triu(A.a)
    lo = np.triu(A.a.T, 1)
    return Matrix._wrap(F, np.asarray(F.vadd(up, lo), dtype=F.dtype))

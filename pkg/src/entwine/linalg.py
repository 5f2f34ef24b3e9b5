"""Small exact matrices over the rings in `rings`.

Matrices are row-major tuples of tuples.  Prime-field matrices get a numpy
int64 fast path for multiplication and Kronecker products; everything else
runs in pure Python.  Dot products of mod-p ints stay far below 2^63 for the
dimensions used here (<= a few hundred), so the fast path never overflows.
"""

from __future__ import annotations

import numpy as np

from .rings import DualNumbers, PrimeField, Ring


class Matrix:
    __slots__ = ("ring", "rows", "ncols")

    def __init__(self, ring: Ring, rows):
        self.ring = ring
        self.rows = tuple(tuple(r) for r in rows)
        self.ncols = len(self.rows[0]) if self.rows else 0

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __eq__(self, other):
        if not isinstance(other, Matrix) or self.shape != other.shape:
            return False
        eq = self.ring.eq
        return all(eq(a, b) for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        return f"Matrix({self.ring.name}, {self.nrows}x{self.ncols})"

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def is_scalar(self) -> bool:
        return self.shape == (1, 1)

    def scalar(self):
        if not self.is_scalar():
            raise ValueError("not 1x1")
        return self.rows[0][0]

    # -- constructors ------------------------------------------------------

    @staticmethod
    def identity(ring: Ring, n: int) -> "Matrix":
        z, o = ring.zero, ring.one
        return Matrix(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(ring: Ring, n: int, m: int) -> "Matrix":
        z = ring.zero
        return Matrix(ring, [[z] * m for _ in range(n)])

    @staticmethod
    def scalar_matrix(ring: Ring, value) -> "Matrix":
        return Matrix(ring, [[value]])

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        add = self.ring.add
        return Matrix(self.ring, [[add(a, b) for a, b in zip(ra, rb)]
                                  for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        sub = self.ring.sub
        return Matrix(self.ring, [[sub(a, b) for a, b in zip(ra, rb)]
                                  for ra, rb in zip(self.rows, other.rows)])

    def scale(self, c) -> "Matrix":
        mul = self.ring.mul
        return Matrix(self.ring, [[mul(c, a) for a in row] for row in self.rows])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ring = self.ring
        if isinstance(ring, PrimeField) and self.nrows * other.ncols * self.ncols > 64:
            a = np.array(self.rows, dtype=np.int64).reshape(self.nrows, self.ncols)
            b = np.array(other.rows, dtype=np.int64).reshape(other.nrows, other.ncols)
            c = (a @ b) % ring.p
            return Matrix(ring, c.tolist())
        add, mul, zero = ring.add, ring.mul, ring.zero
        bt = list(zip(*other.rows)) if other.rows else []
        out = []
        for row in self.rows:
            orow = []
            for col in bt:
                acc = zero
                for x, y in zip(row, col):
                    acc = add(acc, mul(x, y))
                orow.append(acc)
            out.append(orow)
        if not bt:
            out = [[zero] * other.ncols for _ in range(self.nrows)]
        return Matrix(ring, out)

    def kron(self, other: "Matrix") -> "Matrix":
        ring = self.ring
        if isinstance(ring, PrimeField) and \
                self.nrows * self.ncols * other.nrows * other.ncols > 256:
            a = np.array(self.rows, dtype=np.int64).reshape(self.nrows, self.ncols)
            b = np.array(other.rows, dtype=np.int64).reshape(other.nrows, other.ncols)
            c = np.kron(a, b) % ring.p
            return Matrix(ring, c.tolist())
        mul = ring.mul
        out = []
        for ra in self.rows:
            for rb in other.rows:
                out.append([mul(x, y) for x in ra for y in rb])
        if not out:
            out = [[]]
        return Matrix(ring, out)

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, list(zip(*self.rows)) if self.rows else [[]])

    def inverse(self) -> "Matrix":
        """Gaussian elimination; dual numbers split into (A + eps B)^{-1}."""
        ring = self.ring
        n = self.nrows
        if n != self.ncols:
            raise ValueError("not square")
        if isinstance(ring, DualNumbers):
            base = ring.base
            a = Matrix(base, [[x[0] for x in row] for row in self.rows])
            b = Matrix(base, [[x[1] for x in row] for row in self.rows])
            ia = a.inverse()
            corr = ia @ b @ ia
            neg = base.neg
            return Matrix(ring, [[(ia.rows[i][j], neg(corr.rows[i][j])) for j in range(n)]
                                 for i in range(n)])
        m = [list(row) for row in self.rows]
        inv = [list(row) for row in Matrix.identity(ring, n).rows]
        for col in range(n):
            piv = None
            for r in range(col, n):
                if not ring.is_zero(m[r][col]):
                    piv = r
                    break
            if piv is None:
                raise ZeroDivisionError("matrix not invertible")
            m[col], m[piv] = m[piv], m[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            pinv = ring.inv(m[col][col])
            m[col] = [ring.mul(pinv, x) for x in m[col]]
            inv[col] = [ring.mul(pinv, x) for x in inv[col]]
            for r in range(n):
                if r != col and not ring.is_zero(m[r][col]):
                    f = m[r][col]
                    m[r] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(m[r], m[col])]
                    inv[r] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(inv[r], inv[col])]
        return Matrix(ring, inv)

    def is_identity(self) -> bool:
        if self.nrows != self.ncols:
            return False
        ring = self.ring
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                if not ring.eq(x, ring.one if i == j else ring.zero):
                    return False
        return True

    def show(self) -> str:
        """Exact literal: scalar, or [[..],[..]] with ring element syntax."""
        if self.is_scalar():
            return self.ring.show(self.scalar())
        return "[" + ",".join("[" + ",".join(self.ring.show(x) for x in row) + "]"
                              for row in self.rows) + "]"


def kron_all(ring: Ring, mats) -> Matrix:
    """Kronecker product of a list; the empty product is the 1x1 identity."""
    out = Matrix.identity(ring, 1)
    for m in mats:
        out = out.kron(m)
    return out

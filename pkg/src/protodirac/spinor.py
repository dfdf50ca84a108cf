"""Exact spinor matrices over a point.

Operators on the 2^n-dimensional exterior algebra of A are built directly
from the fermionic creation and annihilation matrices, with rows and columns
indexed by bitmask (bit i-1 for e_i).  None of this goes through the
exterior/dull/duality modules, so it serves as an independent check of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exterior import MultiVec
from .ring import Poly


@dataclass(frozen=True, eq=False)
class SpinorMatrix:
    n: int
    entries: np.ndarray

    @classmethod
    def zero(cls, n: int) -> "SpinorMatrix":
        return cls(n, np.full((1 << n, 1 << n), Fraction(0), dtype=object))

    @classmethod
    def identity(cls, n: int) -> "SpinorMatrix":
        m = cls.zero(n)
        for i in range(1 << n):
            m.entries[i, i] = Fraction(1)
        return m

    def _same(self, other):
        if not isinstance(other, SpinorMatrix) or other.n != self.n:
            raise ValueError("spinor matrices of different size")

    def __add__(self, other):
        self._same(other)
        return SpinorMatrix(self.n, self.entries + other.entries)

    def __sub__(self, other):
        self._same(other)
        return SpinorMatrix(self.n, self.entries - other.entries)

    def __neg__(self):
        return SpinorMatrix(self.n, -self.entries)

    def __matmul__(self, other):
        self._same(other)
        return SpinorMatrix(self.n, self.entries.dot(other.entries))

    def __mul__(self, c):
        return SpinorMatrix(self.n, self.entries * Fraction(c))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SpinorMatrix):
            return NotImplemented
        return self.n == other.n and bool((self.entries == other.entries).all())

    __hash__ = None

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries.flat)

    def is_scalar(self):
        """Return c if the matrix is c times the identity, else None."""
        c = self.entries[0, 0]
        return c if self == SpinorMatrix.identity(self.n) * c else None

    def nonzero_entries(self) -> dict:
        rows, cols = self.entries.shape
        return {(r, c): self.entries[r, c] for r in range(rows) for c in range(cols) if self.entries[r, c] != 0}

    def column(self, mask: int) -> dict:
        return {r: v for r, v in enumerate(self.entries[:, mask]) if v != 0}


def _below(mask: int, bit: int) -> int:
    return bin(mask & (bit - 1)).count("1")


def creation(n: int, i: int) -> SpinorMatrix:
    """Left wedge by e_i."""
    m = SpinorMatrix.zero(n)
    bit = 1 << (i - 1)
    for col in range(1 << n):
        if not col & bit:
            m.entries[col | bit, col] = Fraction(-1 if _below(col, bit) % 2 else 1)
    return m


def annihilation(n: int, i: int) -> SpinorMatrix:
    """Contraction by e^i."""
    m = SpinorMatrix.zero(n)
    bit = 1 << (i - 1)
    for col in range(1 << n):
        if col & bit:
            m.entries[col ^ bit, col] = Fraction(-1 if _below(col, bit) % 2 else 1)
    return m


def clifford_from_coeffs(n: int, vec: dict, form: dict) -> SpinorMatrix:
    """Clifford action of sum vec[i] e_i + sum form[i] e^i (1-based keys)."""
    out = SpinorMatrix.zero(n)
    for i, c in vec.items():
        out = out + creation(n, i) * c
    for i, c in form.items():
        out = out + annihilation(n, i) * c
    return out


def graded_commutator(a: SpinorMatrix, b: SpinorMatrix, both_odd: bool) -> SpinorMatrix:
    return a @ b + b @ a if both_odd else a @ b - b @ a


def _const(p) -> Fraction:
    return p.constant_value()


def dirac_matrix(P) -> SpinorMatrix:
    """The Dirac generating operator assembled from structure constants alone."""
    if P.m:
        raise ValueError("spinor matrices exist only over a point (m = 0)")
    n = P.n
    W = {i: creation(n, i) for i in range(1, n + 1)}
    C = {i: annihilation(n, i) for i in range(1, n + 1)}
    a = lambda i, j, k: _const(P.S_A.constant(i, j, k))
    b = lambda i, j, k: _const(P.S_star.constant(i, j, k))  # b_k^{ij}
    idx = range(1, n + 1)
    X0 = {i: sum((b(i, j, j) for j in idx), Fraction(0)) for i in idx}
    xi0 = {i: sum((a(i, j, j) for j in idx), Fraction(0)) for i in idx}

    d_star = SpinorMatrix.zero(n)
    for i in idx:
        for j in idx:
            for k in idx:
                if j < k and b(j, k, i):
                    d_star = d_star - (W[j] @ W[k] @ C[i]) * b(j, k, i)
    partial = SpinorMatrix.zero(n)
    for p in idx:
        for q in idx:
            for k in idx:
                if p < q and a(p, q, k):
                    partial = partial - (W[k] @ C[q] @ C[p]) * a(p, q, k)
    for i in idx:
        partial = partial + C[i] * xi0[i]
    half = Fraction(1, 2)
    D = d_star - partial
    for i in idx:
        D = D + W[i] * (half * X0[i]) + C[i] * (half * xi0[i])
    for mask, c in P.tau.items():
        i, j, k = _bits(mask)
        D = D + (W[i] @ W[j] @ W[k]) * _const(c)
    for mask, c in P.phi.items():
        i, j, k = _bits(mask)
        D = D - (C[k] @ C[j] @ C[i]) * _const(c)
    return D


def _bits(mask: int) -> tuple:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def operator_matrix(n: int, apply) -> SpinorMatrix:
    """Matrix of a library operator, read column by column from basis images."""
    out = SpinorMatrix.zero(n)
    for col in range(1 << n):
        image = apply(MultiVec.from_masks(n, 0, {col: Poly.one(0)}))
        for row, c in image.items():
            out.entries[row, col] = c.constant_value()
    return out


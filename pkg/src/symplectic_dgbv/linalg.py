"""Exact linear algebra over the rationals.

Matrices are lists of rows, vectors are lists, entries are ``Fraction``.
Everything here is dense; the complexes this package handles have at
most a few hundred basis elements per degree.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = list[Fraction]
Matrix = list[list[Fraction]]


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def zeros(n: int) -> Vector:
    return [Fraction(0)] * n


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence[Fraction]], ncols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence[Fraction]) -> Vector:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def is_zero(v: Iterable[Fraction]) -> bool:
    return all(x == 0 for x in v)


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    a = [list(map(frac, r)) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(a):
            break
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(a: Sequence[Sequence[Fraction]], ncols: int) -> Matrix:
    """Basis of {x : a x = 0}, one vector per free column."""
    red, pivots = rref(a, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = zeros(ncols)
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction], ncols: int) -> Vector | None:
    """Particular solution of a x = b with all free variables zero, or None."""
    aug = [list(row) + [frac(bi)] for row, bi in zip(a, b)]
    red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = zeros(ncols)
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + e for row, e in zip(a, identity(n))]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def det(a: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(a)
    m = [list(map(frac, r)) for r in a]
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        result *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


class Subspace:
    """Subspace of Q^n stored as a reduced echelon basis.

    The echelon form is canonical, so two subspaces are equal exactly
    when their ``basis`` lists are equal.
    """

    def __init__(self, vectors: Iterable[Sequence[Fraction]], dim: int):
        self.ambient = dim
        self.basis, self.pivots = rref(list(vectors), dim)

    def __len__(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def reduce(self, v: Sequence[Fraction]) -> Vector:
        """Remainder of v after eliminating the pivot columns."""
        w = list(map(frac, v))
        for row, p in zip(self.basis, self.pivots):
            if w[p] != 0:
                f = w[p]
                w = [x - f * y for x, y in zip(w, row)]
        return w

    def coordinates(self, v: Sequence[Fraction]) -> Vector | None:
        """Coefficients of v in the echelon basis, or None if v is outside."""
        if not is_zero(self.reduce(v)):
            return None
        return [frac(v[p]) for p in self.pivots]

    def contains(self, v: Sequence[Fraction]) -> bool:
        return is_zero(self.reduce(v))

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def equals(self, other: "Subspace") -> bool:
        # double inclusion, deliberately not a dimension count
        return self.contains_space(other) and other.contains_space(self)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.basis + other.basis, self.ambient)

    def intersect(self, other: "Subspace") -> "Subspace":
        n = self.ambient
        if not self.basis or not other.basis:
            return Subspace([], n)
        # a u = b v  <=>  [A | -B] (u, v) = 0
        k = len(self.basis)
        cols = [list(v) for v in self.basis] + [[-x for x in v] for v in other.basis]
        kernel = nullspace(transpose(cols), len(cols))
        vecs = []
        for sol in kernel:
            w = zeros(n)
            for coeff, v in zip(sol[:k], self.basis):
                if coeff != 0:
                    w = [x + coeff * y for x, y in zip(w, v)]
            vecs.append(w)
        return Subspace(vecs, n)


def image(a: Matrix, ncols: int, nrows: int) -> Subspace:
    """Column space of a (nrows x ncols) as a Subspace of Q^nrows."""
    return Subspace(transpose(a) if a else [], nrows)


def kernel(a: Matrix, ncols: int) -> Subspace:
    return Subspace(nullspace(a, ncols), ncols)

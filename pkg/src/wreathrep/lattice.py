"""Integer matrices and finite-index sublattices of Z^d.

Vectors are rows; a matrix M acts on a row vector v as ``v @ M``.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

Matrix = tuple  # tuple of row tuples


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    out = tuple(tuple(int(x) for x in r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def identity_matrix(d: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def vec_mat(v: Sequence[int], m: Matrix) -> tuple:
    if not m:
        return ()
    return tuple(sum(v[k] * m[k][l] for k in range(len(v))) for l in range(len(m[0])))


def vec_add(u, v) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(k: int, v) -> tuple:
    return tuple(k * a for a in v)


def hermite(rows: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row Hermite normal form of a nonsingular square matrix.

    Returns (H, U) with H = U @ rows, U unimodular, H upper triangular with
    positive diagonal and entries above each pivot reduced into [0, pivot).
    Raises ValueError for singular input.
    """
    a = [list(r) for r in as_matrix(rows)]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("lattice basis must be square")
    u = [list(r) for r in identity_matrix(n)]

    def sub(i, j, q):  # row_i -= q * row_j
        if q:
            a[i] = [x - q * y for x, y in zip(a[i], a[j])]
            u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    for col in range(n):
        for r in range(col + 1, n):
            while a[r][col]:
                sub(col, r, a[col][col] // a[r][col])
                a[col], a[r] = a[r], a[col]
                u[col], u[r] = u[r], u[col]
        if a[col][col] == 0:
            raise ValueError("singular lattice basis (infinite index)")
        if a[col][col] < 0:
            a[col] = [-x for x in a[col]]
            u[col] = [-x for x in u[col]]
        for r in range(col):
            sub(r, col, a[r][col] // a[col][col])
    return as_matrix(a), as_matrix(u)


def determinant(rows: Sequence[Sequence[int]]) -> int:
    from fractions import Fraction

    a = [[Fraction(x) for x in r] for r in as_matrix(rows)]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return int(det)


def unimodular_inverse(g: Sequence[Sequence[int]]) -> Matrix:
    g = as_matrix(g)
    if abs(determinant(g)) != 1:
        raise ValueError(f"matrix {g} is not unimodular")
    h, u = hermite(g)
    # g unimodular => its Hermite form is the identity, so u = g^{-1}
    assert h == identity_matrix(len(g))
    return u


class Lattice:
    """Finite-index subgroup Y of Z^d given by basis rows."""

    __slots__ = ("basis", "hnf", "_u", "d")

    def __init__(self, basis: Sequence[Sequence[int]]):
        self.basis = as_matrix(basis)
        self.d = len(self.basis)
        self.hnf, self._u = hermite(self.basis)

    @classmethod
    def full(cls, d: int) -> "Lattice":
        return cls(identity_matrix(d))

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return f"Lattice({[list(r) for r in self.basis]})"

    def same_subgroup(self, other: "Lattice") -> bool:
        return self.hnf == other.hnf

    @property
    def index(self) -> int:
        out = 1
        for i in range(self.d):
            out *= self.hnf[i][i]
        return out

    def reduce(self, v: Sequence[int]) -> tuple:
        """Canonical coset representative of v, in the box prod [0, h_ii)."""
        v = list(v)
        for i in range(self.d):
            q = v[i] // self.hnf[i][i]
            if q:
                v = [x - q * y for x, y in zip(v, self.hnf[i])]
        return tuple(v)

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def coords(self, v: Sequence[int]) -> tuple | None:
        """Integer c with c @ basis == v, or None if v is not in the lattice."""
        v = list(v)
        ch = [0] * self.d
        for i in range(self.d):
            piv = self.hnf[i][i]
            if v[i] % piv:
                return None
            q = v[i] // piv
            ch[i] = q
            if q:
                v = [x - q * y for x, y in zip(v, self.hnf[i])]
        if any(v):
            return None
        return vec_mat(ch, self._u)

    def transversal(self) -> list[tuple]:
        """Coset representatives in graded-lexicographic order; first is 0."""
        box = [range(self.hnf[i][i]) for i in range(self.d)]
        return sorted(product(*box), key=lambda t: (sum(t), t))

    def transform(self, gamma: Sequence[Sequence[int]]) -> "Lattice":
        return Lattice(mat_mul(self.basis, as_matrix(gamma)))


def lattice_membership(y: Lattice, v: Sequence[int]) -> bool:
    return y.contains(v)


def lattice_transversal(y: Lattice) -> list[tuple]:
    return y.transversal()

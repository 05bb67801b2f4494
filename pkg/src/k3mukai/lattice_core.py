"""Exact arithmetic on integral symmetric bilinear forms.

Everything here works over Python integers and :class:`fractions.Fraction`;
no floating point is used anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_decomp

__all__ = [
    "LatticeError",
    "GramLattice",
    "DiscriminantGroup",
    "DiscriminantValue",
    "determinant",
    "gamma",
    "discriminant_group",
    "discriminant_quadratic",
    "discriminant_bilinear",
    "saturate",
    "signature",
    "hermite_rows",
]


class LatticeError(ValueError):
    """Raised for invalid lattice input (degenerate Gram, bad vectors, ...)."""


def _bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class GramLattice:
    """A non-degenerate integral lattice given by its Gram matrix."""

    gram: tuple[tuple[int, ...], ...]

    def __init__(self, gram):
        rows = tuple(tuple(int(v) for v in row) for row in gram)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise LatticeError("gram must be a non-empty square matrix")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise LatticeError("gram must be symmetric")
        if _bareiss_det(rows) == 0:
            raise LatticeError("degenerate gram matrix (det = 0)")
        object.__setattr__(self, "gram", rows)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def dot(self, u: Sequence, v: Sequence):
        """Bilinear form on coordinate vectors (ints or Fractions)."""
        self._check_len(u)
        self._check_len(v)
        return sum(u[i] * self.gram[i][j] * v[j]
                   for i in range(self.rank) for j in range(self.rank))

    def apply(self, v: Sequence) -> list:
        """``gram @ v``."""
        self._check_len(v)
        return [sum(row[j] * v[j] for j in range(self.rank)) for row in self.gram]

    def _check_len(self, v: Sequence) -> None:
        if len(v) != self.rank:
            raise LatticeError(f"vector of length {len(v)} does not match rank {self.rank}")

    def to_json(self) -> dict:
        return {"gram": [list(r) for r in self.gram]}

    @classmethod
    def from_json(cls, doc: dict) -> "GramLattice":
        return cls(doc["gram"])


@dataclass(frozen=True)
class DiscriminantValue:
    """A rational value reduced modulo ``modulus`` (2 for q_L, 1 for b_L)."""

    num: int
    den: int
    modulus: int = 2

    @classmethod
    def reduce(cls, value: Fraction, modulus: int = 2) -> "DiscriminantValue":
        r = Fraction(value) % modulus
        return cls(r.numerator, r.denominator, modulus)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def to_json(self) -> dict:
        return {"num": self.num, "den": self.den}


@dataclass(frozen=True)
class DiscriminantGroup:
    """``L*/L`` as a product of cyclic groups with explicit generator lifts.

    ``generators[i]`` holds rational coordinates (in the lattice basis) of an
    element of ``L*`` whose class has order ``orders[i]``.
    """

    orders: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]

    @property
    def order(self) -> int:
        return reduce(lambda x, y: x * y, self.orders, 1)

    @property
    def is_cyclic(self) -> bool:
        return len(self.orders) <= 1


def determinant(L: GramLattice) -> int:
    return _bareiss_det(L.gram)


def gamma(L: GramLattice, x: Sequence[int]) -> int:
    """Positive generator of the ideal ``x . L``, i.e. gcd of ``gram @ x``."""
    if all(c == 0 for c in x):
        raise LatticeError("zero vector")
    return reduce(gcd, L.apply(x), 0)


def discriminant_group(L: GramLattice) -> DiscriminantGroup:
    """Cyclic decomposition of ``L*/L`` from the Smith form ``U G V = D``.

    The class of ``V[:, i] / D[i, i]`` generates the i-th cyclic factor.
    """
    n = L.rank
    S, _, V = smith_normal_decomp(Matrix(L.gram))
    orders, gens = [], []
    for i in range(n):
        di = abs(int(S[i, i]))
        if di > 1:
            orders.append(di)
            gens.append(tuple(Fraction(int(V[j, i]), di) for j in range(n)))
    return DiscriminantGroup(tuple(orders), tuple(gens))


def _check_dual(L: GramLattice, g: Sequence) -> tuple[Fraction, ...]:
    g = tuple(Fraction(c) for c in g)
    if any(Fraction(c).denominator != 1 for c in L.apply(g)):
        raise LatticeError("element is not in the dual lattice")
    return g


def discriminant_quadratic(L: GramLattice, g: Sequence) -> DiscriminantValue:
    """``q_L(g) = g.g mod 2`` for ``g`` in ``L*`` given by rational coordinates."""
    if not L.is_even:
        raise LatticeError("odd lattice")
    g = _check_dual(L, g)
    return DiscriminantValue.reduce(L.dot(g, g), 2)


def discriminant_bilinear(L: GramLattice, g: Sequence, h: Sequence) -> DiscriminantValue:
    """``b_L(g, h) = g.h mod 1``."""
    g = _check_dual(L, g)
    h = _check_dual(L, h)
    return DiscriminantValue.reduce(L.dot(g, h), 1)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite_rows(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of a full-row-rank integer matrix.

    Pivots are positive and entries above each pivot lie in ``[0, pivot)``.
    """
    m = [list(map(int, r)) for r in rows]
    if not m:
        return m
    k, n = len(m), len(m[0])
    row = 0
    for col in range(n):
        if row == k:
            break
        for i in range(row + 1, k):
            if m[i][col] == 0:
                continue
            a, b = m[row][col], m[i][col]
            g, s, t = _xgcd(a, b)
            u, v = a // g, b // g
            r1 = [s * x + t * y for x, y in zip(m[row], m[i])]
            r2 = [-v * x + u * y for x, y in zip(m[row], m[i])]
            m[row], m[i] = r1, r2
        if m[row][col] == 0:
            continue
        if m[row][col] < 0:
            m[row] = [-x for x in m[row]]
        p = m[row][col]
        for i in range(row):
            f = m[i][col] // p
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[row])]
        row += 1
    if row < k:
        raise LatticeError("vectors are linearly dependent")
    return m


def saturate(L: GramLattice, S: Sequence[Sequence[int]]) -> tuple[GramLattice, list[list[int]]]:
    """Primitive closure of ``span(S)`` in ``L``.

    Returns the Gram matrix of the saturated sublattice together with its
    basis (rows, in the coordinates of ``L``) in Hermite normal form.
    """
    vecs = [list(map(int, v)) for v in S]
    if not vecs:
        raise LatticeError("empty vector list")
    for v in vecs:
        L._check_len(v)
    k = len(vecs)
    M = Matrix(vecs)
    if M.rank() < k:
        raise LatticeError("vectors are linearly dependent")
    # M = U^-1 D V^-1; the first k rows of V^-1 span the saturation.
    _, _, V = smith_normal_decomp(M)
    Vinv = V.inv()
    basis = hermite_rows([[int(Vinv[i, j]) for j in range(L.rank)] for i in range(k)])
    gram = [[L.dot(u, v) for v in basis] for u in basis]
    return GramLattice(gram), basis


def signature(L: GramLattice) -> tuple[int, int]:
    """``(positive, negative)`` inertia via symmetric rational elimination."""
    a = [[Fraction(v) for v in row] for row in L.gram]
    n = L.rank
    pos = neg = 0
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:  # pragma: no cover - excluded by det != 0
                    raise LatticeError("degenerate gram matrix (det = 0)")
                # e_k -> e_k + e_j makes the pivot 2 a[k][j] != 0
                for c in range(n):
                    a[k][c] += a[j][c]
                for r in range(n):
                    a[r][k] += a[r][j]
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                for c in range(k, n):
                    a[i][c] -= f * a[k][c]
        for i in range(k + 1, n):
            a[k][i] = Fraction(0)
    return pos, neg

"""Rank-2 polarized Picard lattices ``(N(X), H)`` with invariants ``(a, d, +-mu)``.

Vectors are written ``z = (x*H + y*delta) / 2a^2`` where ``H^2 = 2a^2`` and
``delta`` spans ``H^perp`` with ``delta^2 = -2a^2 d``.  Such a ``z`` lies in
the lattice iff ``x = mu*y (mod 2a^2)``, and ``z^2 = (x^2 - d*y^2) / 2a^2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

from .lattice_core import GramLattice, LatticeError, determinant, gamma, signature

__all__ = [
    "PolarizedRank2",
    "VectorXY",
    "Orientation",
    "make",
    "gram_of",
    "contains",
    "norm",
    "dot",
    "model_to_xy",
    "xy_to_model",
    "invariants_from",
    "unit_classes",
    "valid_triples",
]


@dataclass(frozen=True)
class VectorXY:
    x: int
    y: int

    def __iter__(self):
        return iter((self.x, self.y))

    def __neg__(self) -> "VectorXY":
        return VectorXY(-self.x, -self.y)

    def __add__(self, other: "VectorXY") -> "VectorXY":
        return VectorXY(self.x + other.x, self.y + other.y)


@dataclass(frozen=True, eq=False)
class PolarizedRank2:
    """Validated triple ``(a, d, mu)``; ``mu`` is kept in ``[1, 2a^2 - 1]``.

    Equality and hashing use the class ``{mu, -mu}``.
    """

    a: int
    d: int
    mu: int

    @property
    def h_square(self) -> int:
        return 2 * self.a * self.a

    @property
    def mu_class(self) -> tuple[int, int]:
        m = self.h_square
        return tuple(sorted({self.mu % m, (-self.mu) % m}))

    @property
    def canonical_mu(self) -> int:
        return self.mu_class[0]

    @property
    def nu(self) -> int:
        """``mu^-1 mod 2a^2``."""
        return pow(self.mu, -1, self.h_square) if self.h_square > 1 else 0

    def __eq__(self, other):
        if not isinstance(other, PolarizedRank2):
            return NotImplemented
        return (self.a, self.d, self.mu_class) == (other.a, other.d, other.mu_class)

    def __hash__(self):
        return hash((self.a, self.d, self.mu_class))

    def to_json(self) -> dict:
        return {"a": self.a, "d": self.d, "mu": self.canonical_mu}


def make(a: int, d: int, mu: int) -> PolarizedRank2:
    if a < 1:
        raise ValueError("a must be >= 1")
    if d <= 0:
        raise ValueError("d must be positive")
    m = 2 * a * a
    if gcd(mu, m) != 1:
        raise ValueError("mu not a unit modulo 2a^2")
    if (mu * mu - d) % (2 * m):
        raise ValueError("incompatible d, mu: mu^2 != d mod 4a^2")
    rep = mu % m
    if rep == 0:  # only when 2a^2 = ... never, m >= 2 and mu a unit
        rep = m  # pragma: no cover
    return PolarizedRank2(a, d, rep)


def gram_of(P: PolarizedRank2) -> GramLattice:
    """Gram matrix in the basis ``(H, (mu*H + delta)/2a^2)``."""
    m = P.h_square
    return GramLattice([[m, P.mu], [P.mu, (P.mu * P.mu - P.d) // m]])


def contains(P: PolarizedRank2, v: VectorXY) -> bool:
    return (v.x - P.mu * v.y) % P.h_square == 0


def norm(P: PolarizedRank2, v: VectorXY) -> Fraction:
    return Fraction(v.x * v.x - P.d * v.y * v.y, P.h_square)


def dot(P: PolarizedRank2, u: VectorXY, v: VectorXY) -> Fraction:
    return Fraction(u.x * v.x - P.d * u.y * v.y, P.h_square)


def model_to_xy(P: PolarizedRank2, c: Sequence[int]) -> VectorXY:
    """Coordinates in the basis of :func:`gram_of` to ``(x, y)``."""
    c0, c1 = c
    return VectorXY(P.h_square * c0 + P.mu * c1, c1)


def xy_to_model(P: PolarizedRank2, v: VectorXY) -> tuple[int, int]:
    if not contains(P, v):
        raise ValueError("vector not in N(X)")
    return (v.x - P.mu * v.y) // P.h_square, v.y


@dataclass(frozen=True)
class Orientation:
    """The sign of ``delta`` chosen during extraction, in the input basis."""

    delta: tuple[int, int]
    glue: tuple[int, int]


def invariants_from(L: GramLattice, H: Sequence[int]) -> tuple[PolarizedRank2, Orientation]:
    """Recover ``(a, d, +-mu)`` from a rank-2 Gram matrix and a polarization."""
    if L.rank != 2:
        raise LatticeError("rank-2 lattice required")
    if not L.is_even:
        raise LatticeError("lattice must be even")
    if signature(L) != (1, 1):
        raise LatticeError("signature must be (1, 1)")
    H = tuple(int(c) for c in H)
    if gcd(*H) != 1:
        raise LatticeError("H is not primitive")
    h2 = L.dot(H, H)
    a = isqrt(h2 // 2) if h2 > 0 else 0
    if h2 <= 0 or 2 * a * a != h2:
        raise LatticeError("H^2 is not of the form 2a^2")
    if gamma(L, H) != 1:
        raise LatticeError("gamma(H) != 1: the rank-2 model requires gamma(H) = 1")
    d = -determinant(L)
    m = 2 * a * a
    w = L.apply(H)
    delta = (w[1], -w[0])  # primitive because gamma(H) = 1
    if L.dot(delta, delta) != -m * d:  # pragma: no cover - follows from gamma(H) = 1
        raise LatticeError("unexpected orthogonal complement")
    for mu in range(1, max(m, 2)):
        if gcd(mu, m) != 1 or (mu * mu - d) % (2 * m):
            continue
        glue = [mu * H[i] + delta[i] for i in range(2)]
        if all(c % m == 0 for c in glue):
            P = make(a, d, mu)
            return P, Orientation(delta, (glue[0] // m, glue[1] // m))
    raise LatticeError("no glue class found")  # pragma: no cover


def unit_classes(a: int) -> list[int]:
    """Canonical representatives of ``{mu, -mu}`` in ``(Z/2a^2)^*``."""
    m = 2 * a * a
    if m == 2:
        return [1]
    return [mu for mu in range(1, m // 2) if gcd(mu, m) == 1]


def valid_triples(a: int, d_max: int) -> list[PolarizedRank2]:
    """All ``(a, d, +-mu)`` with ``1 <= d <= d_max``, ordered by ``d`` then ``mu``."""
    m = 2 * a * a
    out = []
    by_res: dict[int, list[int]] = {}
    for mu in unit_classes(a):
        by_res.setdefault(mu * mu % (2 * m), []).append(mu)
    for d in range(1, d_max + 1):
        for mu in by_res.get(d % (2 * m), ()):
            out.append(PolarizedRank2(a, d, mu))
    return out

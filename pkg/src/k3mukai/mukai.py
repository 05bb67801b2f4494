"""Mukai-lattice constructions for ``v = (a, H, a)``.

Only the block ``U + N(X)`` of the Mukai lattice is ever used: ``U`` is
spanned by the generators of ``H^0`` and ``H^4``, and ``v^perp / Zv`` is
computed symbolically from the rank-2 model.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .lattice_core import GramLattice, determinant, gamma
from .picard2 import PolarizedRank2, VectorXY, contains, dot, gram_of, norm

__all__ = [
    "MukaiError",
    "MukaiVector",
    "NYPresentation",
    "mukai_product",
    "mukai_vector",
    "nef_class",
    "ny_presentation",
    "det_equality_check",
    "transcendental_index",
    "isomorphism_possible",
    "char_compat_check",
]


class MukaiError(ValueError):
    pass


@dataclass(frozen=True)
class MukaiVector:
    r: int
    c1: VectorXY
    s: int


def mukai_vector(P: PolarizedRank2) -> MukaiVector:
    """``v = (a, H, a)``."""
    return MukaiVector(P.a, VectorXY(P.h_square, 0), P.a)


def nef_class() -> MukaiVector:
    """``h = (-1, 0, 1)``, of square 2 and orthogonal to ``v``."""
    return MukaiVector(-1, VectorXY(0, 0), 1)


def mukai_product(u: MukaiVector, w: MukaiVector, P: PolarizedRank2) -> int:
    """``-(u_0 w_2 + u_2 w_0) + u_1 . w_1``."""
    for vec in (u, w):
        if not contains(P, vec.c1):
            raise MukaiError("c1 component is not in N(X)")
    pairing = dot(P, u.c1, w.c1)
    assert pairing.denominator == 1
    return -(u.r * w.s + u.s * w.r) + int(pairing)


@dataclass(frozen=True)
class NYPresentation:
    """``N(Y)`` in the basis ``(h, (h + k_gen)/2)``.

    ``k_gen = delta / a`` spans ``K(h) = h^perp`` and has square ``-2d``.
    ``nu`` is ``mu^-1 mod 2a^2``; only its parity enters the Gram matrix,
    so the odd representative 1 is used.
    """

    gram: GramLattice
    h: tuple[int, int]
    nu: int


def ny_presentation(P: PolarizedRank2) -> NYPresentation:
    # glue h/2 + nu*k_gen/2 differs from (h + k_gen)/2 by ((nu-1)/2) k_gen
    gram = GramLattice([[2, 1], [1, (1 - P.d) // 2]])
    return NYPresentation(gram, (1, 0), P.nu)


def det_equality_check(P: PolarizedRank2) -> bool:
    return determinant(gram_of(P)) == determinant(ny_presentation(P).gram)


def transcendental_index(a: int, gamma_h: int) -> int:
    """``[T(Y):T(X)] = min |v.x|``, the positive generator of ``aZ + gamma(H)Z``."""
    if a < 1 or gamma_h < 1:
        raise MukaiError("a and gamma(H) must be positive")
    if (2 * a * a) % gamma_h:
        raise MukaiError("gamma(H) must divide H^2 = 2a^2")
    return gcd(a, gamma_h)


def isomorphism_possible(a: int, gamma_h: int) -> bool:
    """Necessary condition: ``gamma(H) = 1``, or ``gamma(H) = 2`` with ``a`` odd."""
    return transcendental_index(a, gamma_h) == 1


def char_compat_check(P: PolarizedRank2, v: VectorXY) -> bool:
    """Whether a degree-2 class ``v`` has ``x = +-2a (mod d)``."""
    if not contains(P, v):
        raise MukaiError("vector not in N(X)")
    if norm(P, v) != 2:
        raise MukaiError("vector must have square 2")
    return (v.x - 2 * P.a) % P.d == 0 or (v.x + 2 * P.a) % P.d == 0


def ny_gamma_h(P: PolarizedRank2) -> int:
    pres = ny_presentation(P)
    return gamma(pres.gram, pres.h)

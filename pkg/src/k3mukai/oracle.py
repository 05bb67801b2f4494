"""Decide whether the moduli space ``Y`` for ``v = (a, H, a)`` is isomorphic to ``X``.

Two independent routes answer the same question for a rank-2 Picard lattice
with invariants ``(a, d, +-mu)``:

* Route A looks for a degree-2 class ``(x, y)``: ``x^2 - d*y^2 = 4a^2`` with
  ``x = mu*y (mod 2a^2)`` and ``x = +-2a (mod d)``.
* Route B looks for ``(p, q)`` with ``p^2 - d*q^2 = 4a*alpha`` for some
  ``alpha = +-1`` and ``p = mu*q (mod 2a)``.

Route B supplies the reported witnesses; Route A is a cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Optional, Sequence

from .lattice_core import GramLattice, LatticeError, gamma, saturate
from .pell import (
    PellInstance,
    PellWitness,
    ResidueConstraint,
    constrained_exponents,
    exists_constrained,
    fundamental_unit,
    is_square,
    solve_norm_classes,
    solve_square_d,
    unit_step,
)
from .picard2 import PolarizedRank2, VectorXY, contains, norm

__all__ = [
    "OracleError",
    "Witness",
    "Decision",
    "decide",
    "decide_lattice_only",
    "route_a",
    "route_b",
    "class_witnesses",
    "associated",
    "h1_of",
    "almost_primitive_check",
    "verify_sufficient",
]


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class Witness:
    alpha_sign: int
    p: int
    q: int
    associated_xy: tuple[int, int]
    h1: VectorXY
    h_tilde: VectorXY
    h1_sq: int

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha_sign,
            "p": self.p,
            "q": self.q,
            "x": self.associated_xy[0],
            "y": self.associated_xy[1],
            "h1": [self.h1.x, self.h1.y],
            "h1_sq": self.h1_sq,
        }


@dataclass(frozen=True)
class Decision:
    P: PolarizedRank2
    verdict: bool
    witnesses: tuple[Witness, ...]
    route_agreement: bool
    route_a: Optional[bool]
    lattice_only: bool
    route_a_witness: Optional[tuple[int, int]] = None
    # for odd a the necessity direction assumes gamma(H) = 1
    gamma_assumption: bool = False

    def to_json(self) -> dict:
        doc = {
            "a": self.P.a,
            "d": self.P.d,
            "mu": self.P.canonical_mu,
            "verdict": self.verdict,
            "witnesses": [w.to_json() for w in self.witnesses],
            "route_agreement": self.route_agreement,
            "lattice_only": self.lattice_only,
        }
        if self.gamma_assumption:
            doc["gamma_assumption"] = "gamma(H)=1"
        return doc


def _check_alpha(alpha_sign: int) -> None:
    if alpha_sign not in (1, -1):
        raise OracleError("alpha_sign must be +1 or -1")


def _mu_congruence(P: PolarizedRank2, modulus: int) -> ResidueConstraint:
    mu = P.mu

    def pred(x: int, y: int) -> bool:
        return (x - mu * y) % modulus == 0

    return ResidueConstraint(modulus, pred)


def _pm_2a_mod_d(P: PolarizedRank2) -> ResidueConstraint:
    d, two_a = P.d, 2 * P.a

    def pred(x: int, _y: int) -> bool:
        return (x - two_a) % d == 0 or (x + two_a) % d == 0

    return ResidueConstraint(d, pred, x_only=True)


def route_a(P: PolarizedRank2) -> Optional[PellWitness]:
    """Degree-2 class with ``x = mu*y (mod 2a^2)`` and ``x = +-2a (mod d)``."""
    inst = PellInstance(P.d, 4 * P.a * P.a, (_mu_congruence(P, P.h_square), _pm_2a_mod_d(P)))
    return exists_constrained(inst)


def route_b(P: PolarizedRank2, alpha_sign: int) -> Optional[PellWitness]:
    _check_alpha(alpha_sign)
    return exists_constrained(PellInstance(P.d, 4 * P.a * alpha_sign, _mu_congruence(P, 2 * P.a)))


def associated(alpha_sign: int, p: int, q: int, P: PolarizedRank2) -> tuple[int, int]:
    """``(x, y) = +-(2a + alpha*d*q^2, alpha*p*q)`` with ``x > 0``."""
    _check_alpha(alpha_sign)
    if p * p - P.d * q * q != 4 * P.a * alpha_sign:
        raise OracleError("p^2 - d q^2 != 4a/alpha")
    x = 2 * P.a + alpha_sign * P.d * q * q
    y = alpha_sign * p * q
    if x < 0:
        x, y = -x, -y
    return x, y


def h1_of(alpha_sign: int, p: int, q: int, P: PolarizedRank2) -> VectorXY:
    """``h1 = (apH + aq delta) / 2a^2``: square ``2*alpha*a`` and ``h1.H = ap``."""
    _check_alpha(alpha_sign)
    if p * p - P.d * q * q != 4 * P.a * alpha_sign or (p - P.mu * q) % (2 * P.a):
        raise OracleError("invalid witness")
    h1 = VectorXY(P.a * p, P.a * q)
    assert contains(P, h1) and norm(P, h1) == 2 * alpha_sign * P.a
    return h1


def almost_primitive_check(alpha_sign: int, p: int, q: int, a: int) -> bool:
    _check_alpha(alpha_sign)
    if gcd(a, p) != 1 or gcd(a, q) != 1:
        return False
    g = gcd(p, q)
    return g == 1 if a % 2 == 0 else g in (1, 2)


def _make_witness(P: PolarizedRank2, alpha_sign: int, p: int, q: int) -> Witness:
    if q < 0:
        p, q = -p, -q
    x, y = associated(alpha_sign, p, q, P)
    h1 = h1_of(alpha_sign, p, q, P)
    a, d = P.a, P.d
    assert x * x - d * y * y == 4 * a * a
    assert (x - P.mu * y) % P.h_square == 0
    assert (x - 2 * a) % d == 0 or (x + 2 * a) % d == 0
    assert h1.x % a == 0
    return Witness(alpha_sign, p, q, (x, y), h1, VectorXY(x, y), 2 * alpha_sign * a)


def _nearest_hit(start: PellWitness, period: int, ks: frozenset, unit) -> PellWitness:
    best = None
    for r in ks:
        for k in (r, r - period):
            x, y = unit_step(start.x, start.y, unit, k)
            key = (abs(k), abs(y), abs(x))
            if best is None or key < best[0]:
                best = (key, PellWitness(x, y))
    return best[1]


def class_witnesses(P: PolarizedRank2, alpha_sign: int, q_max: Optional[int] = None) -> list[Witness]:
    """Route B witnesses for one ``alpha``.

    With ``q_max=None`` each solution class contributes the hit closest to its
    minimal representative; otherwise every hit with ``|q| <= q_max`` is listed.
    """
    _check_alpha(alpha_sign)
    d, n = P.d, 4 * P.a * alpha_sign
    cons = (_mu_congruence(P, 2 * P.a),)
    found: dict[tuple[int, int], None] = {}

    def add(p: int, q: int) -> None:
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        found[(p, q)] = None

    if is_square(d):
        for w in solve_square_d(isqrt(d), n):
            if all(c.holds(w.x, w.y) for c in cons) and (q_max is None or abs(w.y) <= q_max):
                add(w.x, w.y)
    else:
        unit = fundamental_unit(d)
        for rep in solve_norm_classes(d, n):
            period, ks = constrained_exponents(rep, unit, cons)
            if not ks:
                continue
            if q_max is None:
                w = _nearest_hit(rep, period, ks, unit)
                add(w.x, w.y)
                continue
            for step in (1, -1):
                k = 0 if step == 1 else -1
                x, y = unit_step(rep.x, rep.y, unit, k)
                misses = 0
                while misses < 2:
                    if abs(y) <= q_max:
                        misses = 0
                        if k % period in ks:
                            add(x, y)
                    else:
                        misses += 1
                    x, y = unit_step(x, y, unit, step)
                    k += step
    out = [_make_witness(P, alpha_sign, p, q) for p, q in found]
    return sorted(out, key=lambda w: (w.q, abs(w.p), w.p))


def decide(P: PolarizedRank2, q_max: Optional[int] = None, cross_check: bool = True) -> Decision:
    """Decide ``Y = X`` for a general K3 surface with invariants ``P``."""
    if P.a < 2:
        raise OracleError("oracle requires a >= 2")
    witnesses = class_witnesses(P, 1, q_max) + class_witnesses(P, -1, q_max)
    verdict_b = any(route_b(P, s) is not None for s in (1, -1))
    if verdict_b != bool(witnesses) and q_max is None:  # pragma: no cover
        raise AssertionError("witness enumeration disagrees with Route B")
    ra = None
    ra_verdict = None
    if cross_check:
        ra = route_a(P)
        ra_verdict = ra is not None
    return Decision(
        P=P,
        verdict=verdict_b,
        witnesses=tuple(witnesses),
        route_agreement=(ra_verdict == verdict_b) if cross_check else True,
        route_a=ra_verdict,
        lattice_only=decide_lattice_only(P),
        route_a_witness=(ra.x, ra.y) if ra is not None else None,
        gamma_assumption=P.a % 2 == 1,
    )


def decide_lattice_only(P: PolarizedRank2) -> bool:
    """``N(X) = N(Y)``: a degree-2 class exists in ``N(X)``."""
    inst = PellInstance(P.d, 4 * P.a * P.a, _mu_congruence(P, P.h_square))
    return exists_constrained(inst) is not None


def verify_sufficient(L: GramLattice, H: Sequence[int], h1: Sequence[int], alpha_sign: int) -> bool:
    """Sufficient condition for ``Y = X`` valid in any Picard rank.

    ``h1^2 = 2*alpha*a``, ``h1.H = 0 (mod a)`` and ``gamma(H) = 1`` inside the
    primitive sublattice generated by ``H`` and ``h1``.
    """
    _check_alpha(alpha_sign)
    H = [int(c) for c in H]
    h1 = [int(c) for c in h1]
    if gcd(*H) != 1:
        raise LatticeError("H is not primitive")
    h2 = L.dot(H, H)
    a = isqrt(h2 // 2) if h2 > 0 else 0
    if h2 <= 0 or 2 * a * a != h2:
        raise LatticeError("H^2 is not of the form 2a^2")
    if L.dot(h1, h1) != 2 * alpha_sign * a:
        return False
    if L.dot(h1, H) % a:
        return False
    try:
        sub, basis = saturate(L, [H, h1])
    except LatticeError:
        return False
    coords = _solve_in_basis(basis, H)
    return gamma(sub, coords) == 1


def _solve_in_basis(basis: list[list[int]], v: list[int]) -> list[int]:
    from sympy import Matrix

    B = Matrix(basis).T
    sol = B.solve_least_squares(Matrix(v)) if B.rows != B.cols else B.solve(Matrix(v))
    coords = [int(c) for c in sol]
    assert [sum(basis[i][j] * coords[i] for i in range(len(basis))) for j in range(len(v))] == v
    return coords

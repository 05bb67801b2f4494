"""Solver for ``x^2 - d*y^2 = N`` with congruence-constrained existence queries.

Solution classes for non-square ``d`` are found with the LMM algorithm
(continued fraction of ``(z + sqrt(d)) / |m|`` for every square root ``z`` of
``d`` modulo ``|m|``, ``m = N / f^2``).  Every solution then has the form
``+-T^k r`` for a class representative ``r`` and the norm-one unit matrix
``T = [[t, d*u], [u, t]]``.

Perfect-square ``d = s^2`` factors as ``(x - s*y)(x + s*y) = N`` and has a
finite solution set.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt, lcm
from typing import Callable, Iterable, Iterator, Optional, Union

__all__ = [
    "PellError",
    "FundamentalUnit",
    "PellWitness",
    "ResidueConstraint",
    "PellInstance",
    "is_square",
    "continued_fraction_sqrt",
    "fundamental_unit",
    "solve_norm_classes",
    "solve_square_d",
    "exists_constrained",
    "unit_step",
    "orbit",
    "class_orbit_window",
]


class PellError(ValueError):
    pass


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


@dataclass(frozen=True)
class FundamentalUnit:
    t: int
    u: int
    d: int

    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.t, self.d * self.u), (self.u, self.t))


@dataclass(frozen=True, order=True)
class PellWitness:
    x: int
    y: int

    def __iter__(self):
        return iter((self.x, self.y))

    def norm(self, d: int) -> int:
        return self.x * self.x - d * self.y * self.y


Allowed = Union[frozenset, Callable[[int, int], bool]]


@dataclass(frozen=True)
class ResidueConstraint:
    """A decidable predicate on ``(x mod m, y mod m)``.

    ``allowed`` is either an explicit set of residue pairs or a callable taking
    the reduced pair.  With ``x_only=True`` the predicate must ignore ``y``;
    the orbit search may then track ``x mod m`` alone, which is far shorter
    whenever ``m`` divides ``d*u``.
    """

    modulus: int
    allowed: Allowed
    x_only: bool = False

    def __post_init__(self):
        if self.modulus < 1:
            raise PellError("modulus must be >= 1")
        if not callable(self.allowed):
            object.__setattr__(
                self, "allowed",
                frozenset((x % self.modulus, y % self.modulus) for x, y in self.allowed))

    def holds(self, x: int, y: int) -> bool:
        m = self.modulus
        if callable(self.allowed):
            return bool(self.allowed(x % m, y % m))
        return (x % m, y % m) in self.allowed

    @classmethod
    def pairs(cls, modulus: int, pairs: Iterable[tuple[int, int]]) -> "ResidueConstraint":
        return cls(modulus, frozenset(pairs))


@dataclass(frozen=True)
class PellInstance:
    """``x^2 - d*y^2 = n`` subject to every constraint in ``constraints``."""

    d: int
    n: int
    constraints: tuple[ResidueConstraint, ...] = field(default=())

    def __post_init__(self):
        if self.d < 1:
            raise PellError("d must be a positive integer")
        if self.n == 0:
            raise PellError("N must be nonzero")
        if isinstance(self.constraints, ResidueConstraint):
            object.__setattr__(self, "constraints", (self.constraints,))
        else:
            object.__setattr__(self, "constraints", tuple(self.constraints))

    @property
    def modulus(self) -> int:
        return lcm(1, *(c.modulus for c in self.constraints))

    def accepts(self, x: int, y: int) -> bool:
        return (x * x - self.d * y * y == self.n
                and all(c.holds(x, y) for c in self.constraints))


# -- continued fractions and units -------------------------------------------

def continued_fraction_sqrt(d: int) -> tuple[int, tuple[int, ...]]:
    """``(a0, period)`` of the periodic continued fraction of ``sqrt(d)``."""
    if d < 1 or is_square(d):
        raise PellError("square radicand")
    a0 = isqrt(d)
    m, q, a = 0, 1, a0
    period = []
    while a != 2 * a0:
        m = a * q - m
        q = (d - m * m) // q
        a = (a0 + m) // q
        period.append(a)
    return a0, tuple(period)


@lru_cache(maxsize=4096)
def fundamental_unit(d: int) -> FundamentalUnit:
    """Minimal ``(t, u)``, ``u > 0``, with ``t^2 - d*u^2 = 1``."""
    a0, period = continued_fraction_sqrt(d)
    h0, h1 = 1, a0
    k0, k1 = 0, 1
    # convergent before the end of the period; repeat once for odd length
    terms = period[:-1] if len(period) % 2 == 0 else period + period[:-1]
    for a in terms:
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
    assert h1 * h1 - d * k1 * k1 == 1
    return FundamentalUnit(h1, k1, d)


@lru_cache(maxsize=4096)
def _negative_unit(d: int) -> Optional[tuple[int, int]]:
    """Minimal solution of ``x^2 - d*y^2 = -1`` if the period is odd."""
    a0, period = continued_fraction_sqrt(d)
    if len(period) % 2 == 0:
        return None
    h0, h1, k0, k1 = 1, a0, 0, 1
    for a in period[:-1]:
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
    assert h1 * h1 - d * k1 * k1 == -1
    return h1, k1


def unit_step(x: int, y: int, unit: FundamentalUnit, k: int = 1) -> tuple[int, int]:
    """Apply ``T^k`` (``k`` may be negative) to ``(x, y)``."""
    t, u, d = unit.t, unit.u, unit.d
    if k < 0:
        u, k = -u, -k
    # square-and-multiply on (t + u sqrt d)
    pt, pu = 1, 0
    bt, bu = t, u
    while k:
        if k & 1:
            pt, pu = pt * bt + d * pu * bu, pt * bu + pu * bt
        bt, bu = bt * bt + d * bu * bu, 2 * bt * bu
        k >>= 1
    return pt * x + d * pu * y, pu * x + pt * y


# -- class representatives ----------------------------------------------------

def _pqa(p0: int, q0: int, d: int) -> Iterator[tuple[int, int, int, int]]:
    """Yield ``(i, Q_i, G_{i-1}, B_{i-1})`` for ``i >= 1`` over one full cycle.

    Uses the PQa recurrences; ``G_{i-1}^2 - d B_{i-1}^2 = (-1)^i Q_i Q_0``.
    """
    s = isqrt(d)
    g2, g1 = -p0, q0
    b2, b1 = 1, 0
    p, q = p0, q0
    seen = set()
    i = 0
    while True:
        num = p + s
        a = num // q if q > 0 else -(num // -q) - 1
        g2, g1 = g1, a * g1 + g2
        b2, b1 = b1, a * b1 + b2
        p = a * q - p
        q = (d - p * p) // q
        i += 1
        yield i, q, g1, b1
        if (p, q) in seen:
            return
        seen.add((p, q))


def _square_divisors(n: int) -> list[int]:
    n = abs(n)
    return [f for f in range(1, isqrt(n) + 1) if n % (f * f) == 0]


def _minimize_in_class(x: int, y: int, unit: FundamentalUnit) -> tuple[int, int]:
    """Element of ``+-T^k (x, y)`` with minimal ``|y|`` (then ``|x|``), ``y >= 0``."""
    def key(p):
        return abs(p[1]), abs(p[0])

    best = (x, y)
    for k in (1, -1):
        cur = (x, y)
        while True:
            nxt = unit_step(*cur, unit, k)
            if key(nxt) < key(cur):
                cur = nxt
                if key(cur) < key(best):
                    best = cur
            else:
                break
    bx, by = best
    if by < 0 or (by == 0 and bx < 0):
        bx, by = -bx, -by
    return bx, by


def _canonical_key(x: int, y: int, unit: FundamentalUnit) -> tuple[int, int]:
    bx, by = _minimize_in_class(x, y, unit)
    if by == 0:
        return bx, by
    # a class can contain two elements with the same minimal |y|
    # (ambiguous classes); pick a deterministic one
    cands = [(bx, by)]
    for k in (1, -1):
        cx, cy = unit_step(bx, by, unit, k)
        if abs(cy) == by:
            cands.append((cx, cy) if cy > 0 else (-cx, -cy))
    return min(cands, key=lambda p: (abs(p[0]), -p[0]))


@lru_cache(maxsize=65536)
def _classes(d: int, n: int) -> tuple[tuple[int, int], ...]:
    unit = fundamental_unit(d)
    neg = _negative_unit(d)
    found: dict[tuple[int, int], None] = {}
    for f in _square_divisors(n):
        m = n // (f * f)
        am = abs(m)
        for z in range(-((am - 1) // 2), am // 2 + 1):
            if (z * z - d) % am:
                continue
            for i, q, g, b in _pqa(z, am, d):
                if q not in (1, -1):
                    continue
                nrm = g * g - d * b * b
                if nrm == m:
                    r, s = g, b
                elif nrm == -m and neg is not None:
                    t, u = neg
                    r, s = g * t + b * u * d, g * u + b * t
                else:
                    break
                key = _canonical_key(f * r, f * s, unit)
                found[key] = None
                break
    return tuple(sorted(found))


def solve_norm_classes(d: int, n: int) -> list[PellWitness]:
    """One representative per solution class of ``x^2 - d*y^2 = n``.

    Representatives have minimal ``|y|`` in their class and ``y >= 0``; every
    integer solution is ``+-T^k r`` for exactly one listed ``r``.
    """
    if d < 1 or is_square(d):
        raise PellError("d must be a positive non-square")
    if n == 0:
        raise PellError("N must be nonzero")
    reps = [PellWitness(x, y) for x, y in _classes(d, n)]
    for w in reps:
        assert w.norm(d) == n
    return reps


def solve_square_d(s: int, n: int) -> list[PellWitness]:
    """All solutions of ``x^2 - s^2 y^2 = n`` (finite), sorted."""
    if s < 0:
        raise PellError("s must be non-negative")
    if n == 0:
        raise PellError("N must be nonzero")
    out = set()
    an = abs(n)
    for e in range(1, isqrt(an) + 1):
        if an % e:
            continue
        for e1 in {e, an // e}:
            for sign in (1, -1):
                # x - s y = u, x + s y = v with u v = n
                u = sign * e1
                v = n // u
                if (u + v) % 2:
                    continue
                x = (u + v) // 2
                diff = v - u
                if s == 0:
                    if diff == 0:
                        out.add(PellWitness(x, 0))  # pragma: no cover - s >= 1 in practice
                    continue
                if diff % (2 * s) == 0:
                    out.add(PellWitness(x, diff // (2 * s)))
    sols = sorted(out)
    for w in sols:
        assert w.norm(s * s) == n
    return sols


# -- orbits -------------------------------------------------------------------

def orbit(rep: PellWitness, unit: FundamentalUnit, kmin: int, kmax: int) -> Iterator[tuple[int, PellWitness]]:
    """``(k, T^k rep)`` for ``kmin <= k <= kmax``."""
    x, y = unit_step(rep.x, rep.y, unit, kmin)
    for k in range(kmin, kmax + 1):
        yield k, PellWitness(x, y)
        x, y = unit.t * x + unit.d * unit.u * y, unit.u * x + unit.t * y


def class_orbit_window(d: int, n: int, y_bound: int) -> set[tuple[int, int]]:
    """All solutions with ``|y| <= y_bound`` generated from class representatives."""
    out = set()
    if is_square(d):
        for w in solve_square_d(isqrt(d), n):
            if abs(w.y) <= y_bound:
                out.add((w.x, w.y))
        return out
    unit = fundamental_unit(d)
    for rep in solve_norm_classes(d, n):
        for sign in (1, -1):
            for k in (1, -1):
                x, y = sign * rep.x, sign * rep.y
                if k == -1:
                    x, y = unit_step(x, y, unit, -1)
                # |y| grows monotonically away from the minimal element,
                # apart from at most one step next to it
                misses = 0
                while misses < 2:
                    if abs(y) <= y_bound:
                        out.add((x, y))
                        misses = 0
                    else:
                        misses += 1
                    x, y = unit_step(x, y, unit, k)
    return out


def _residue_hits(start: tuple[int, int], unit: FundamentalUnit,
                  c: ResidueConstraint) -> tuple[int, frozenset]:
    """Period of ``k -> T^k start`` (mod ``c.modulus``) and the exponents where ``c`` holds."""
    m = c.modulus
    t, du, u = unit.t % m, (unit.d * unit.u) % m, unit.u % m
    x0, y0 = start[0] % m, start[1] % m
    hits = []
    if c.x_only and du == 0:
        x, k = x0, 0
        while True:
            if c.holds(x, 0):
                hits.append(k)
            x = (t * x) % m
            k += 1
            if x == x0:
                return k, frozenset(hits)
    x, y, k = x0, y0, 0
    limit = m * m * m + 1
    while True:
        if c.holds(x, y):
            hits.append(k)
        x, y = (t * x + du * y) % m, (u * x + t * y) % m
        k += 1
        if (x, y) == (x0, y0):
            return k, frozenset(hits)
        if k > limit:  # pragma: no cover - T is invertible mod m
            raise PellError("residue orbit failed to cycle")


def _combine(a: tuple[int, frozenset], b: tuple[int, frozenset]) -> tuple[int, frozenset]:
    pa, sa = a
    pb, sb = b
    g = gcd(pa, pb)
    P = pa // g * pb
    by_class: dict[int, list[int]] = {}
    for s in sb:
        by_class.setdefault(s % g, []).append(s)
    out = set()
    for r in sa:
        for s in by_class.get(r % g, ()):
            # k = r mod pa, k = s mod pb
            k = r + pa * (((s - r) // g) * pow(pa // g, -1, pb // g) % (pb // g)) if pb // g > 1 else r
            out.add(k % P)
    return P, frozenset(out)


def constrained_exponents(rep: PellWitness, unit: FundamentalUnit,
                          constraints: tuple[ResidueConstraint, ...]) -> tuple[int, frozenset]:
    """``(period, residues)``: ``T^k rep`` satisfies all constraints iff ``k mod period`` is in residues."""
    acc = (1, frozenset({0}))
    for c in constraints:
        acc = _combine(acc, _residue_hits((rep.x, rep.y), unit, c))
        if not acc[1]:
            break
    return acc


def _witness_key(w: PellWitness) -> tuple:
    return abs(w.y), abs(w.x), -w.y, -w.x


def exists_constrained(inst: PellInstance) -> Optional[PellWitness]:
    """A solution satisfying every residue constraint, or ``None``.

    Complete: each class orbit ``+-T^k r`` is periodic modulo every constraint
    modulus, so the exponents that satisfy a constraint form residue classes
    and their intersection is decided exactly by CRT.
    """
    d, n = inst.d, inst.n
    if is_square(d):
        for w in solve_square_d(isqrt(d), n):
            if inst.accepts(w.x, w.y):
                return w
        return None
    unit = fundamental_unit(d)
    best = None
    for rep in solve_norm_classes(d, n):
        for sign in (1, -1):
            start = PellWitness(sign * rep.x, sign * rep.y)
            period, ks = constrained_exponents(start, unit, inst.constraints)
            if not ks:
                continue
            # smallest |k| keeps the witness small
            k = min(ks, key=lambda r: (min(r, period - r), r))
            if period - k < k:
                k -= period
            x, y = unit_step(start.x, start.y, unit, k)
            cand = PellWitness(x, y)
            if best is None or _witness_key(cand) < _witness_key(best):
                best = cand
    if best is not None:
        assert inst.accepts(best.x, best.y)
    return best

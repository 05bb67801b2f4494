"""Divisorial conditions ``(d, +-mu)`` on moduli for which ``Y = X``.

``D(a, mu, alpha)`` is the set of ``d`` with ``d = mu^2 (mod 4a^2)`` for which
``p^2 - d*q^2 = 4a*alpha`` has a solution with ``p = mu*q (mod 2a)``.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterable, Optional

from .oracle import class_witnesses
from .pell import fundamental_unit, is_square, solve_norm_classes, solve_square_d
from .picard2 import PolarizedRank2, unit_classes

__all__ = [
    "DivisorLabel",
    "family",
    "enum_D",
    "enum_div",
    "enum_div_lifted",
    "mu_lift",
    "nu_candidates",
]


@dataclass(frozen=True)
class DivisorLabel:
    a: int
    d: int
    mu_class: tuple[int, int]
    witnesses: tuple[tuple[int, int, int], ...]

    @property
    def mu(self) -> int:
        return self.mu_class[0]

    @property
    def square_discriminant(self) -> bool:
        return is_square(self.d)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "mu": self.mu,
            "mu_class": list(self.mu_class),
            "witnesses": [{"alpha": s, "p": p, "q": q} for s, p, q in self.witnesses],
            "square_discriminant": self.square_discriminant,
        }


def _mu_class(a: int, mu: int) -> tuple[int, int]:
    m = 2 * a * a
    return tuple(sorted({mu % m, (-mu) % m}))


def family(a: int, mu: int, alpha_sign: int, t_range: Iterable[int]) -> list[tuple[int, int, int]]:
    """``(t, d, p)`` with ``p = mu + 2ta*alpha``, ``d = p^2 - 4a*alpha`` over ``t*mu = 1 (mod a)``.

    These are the ``q = 1`` members of ``D(a, mu, alpha)``; only ``d > 0`` is kept.
    """
    if gcd(mu, 2 * a * a) != 1:
        raise ValueError("mu not a unit modulo 2a^2")
    if alpha_sign not in (1, -1):
        raise ValueError("alpha_sign must be +1 or -1")
    out = []
    for t in t_range:
        if (t * mu - 1) % a:
            continue
        p = mu + 2 * t * a * alpha_sign
        d = p * p - 4 * a * alpha_sign
        if d <= 0:
            continue
        assert (d - mu * mu) % (4 * a * a) == 0
        out.append((t, d, p))
    return out


def _label(a: int, d: int, mu: int, alphas: tuple[int, ...]) -> Optional[DivisorLabel]:
    P = PolarizedRank2(a, d, mu % (2 * a * a))
    wits = []
    for s in alphas:
        wits.extend((w.alpha_sign, w.p, w.q) for w in class_witnesses(P, s))
    if not wits:
        return None
    return DivisorLabel(a, d, _mu_class(a, mu), tuple(wits))


def _labels_for_d(args) -> list[DivisorLabel]:
    a, d, mus, alphas = args
    return [lab for mu in mus if (lab := _label(a, d, mu, alphas)) is not None]


def _run(tasks: list, parallel: bool) -> list[DivisorLabel]:
    if parallel and len(tasks) > 1:
        with ProcessPoolExecutor() as pool:
            chunks = list(pool.map(_labels_for_d, tasks, chunksize=16))
    else:
        chunks = [_labels_for_d(t) for t in tasks]
    out = [lab for chunk in chunks for lab in chunk]
    return sorted(out, key=lambda lab: (lab.d, lab.mu))


def enum_D(a: int, mu: int, alpha_sign: int, d_max: int, parallel: bool = False) -> list[DivisorLabel]:
    """Members ``d <= d_max`` of ``D(a, +-mu, alpha)``, one solver call per admissible ``d``."""
    if gcd(mu, 2 * a * a) != 1:
        raise ValueError("mu not a unit modulo 2a^2")
    if alpha_sign not in (1, -1):
        raise ValueError("alpha_sign must be +1 or -1")
    step = 4 * a * a
    start = (mu * mu) % step
    cls = _mu_class(a, mu)
    tasks = [(a, d, (cls[0],), (alpha_sign,)) for d in range(start, d_max + 1, step) if d > 0]
    return _run(tasks, parallel)


def enum_div(a: int, d_max: int, alphas: tuple[int, ...] = (1, -1),
             parallel: bool = False) -> list[DivisorLabel]:
    """``Div(a)`` restricted to ``d <= d_max``, deduplicated by ``(d, +-mu)``."""
    if a < 2:
        raise ValueError("a must be >= 2")
    step = 4 * a * a
    by_res: dict[int, list[int]] = {}
    for mu in unit_classes(a):
        by_res.setdefault(mu * mu % step, []).append(mu)
    tasks = [(a, d, tuple(by_res[d % step]), tuple(alphas))
             for d in range(1, d_max + 1) if d % step in by_res]
    return _run(tasks, parallel)


def mu_lift(a: int, d: int, nu: int) -> int:
    """Unique ``mu mod 2a^2`` with ``mu = nu (mod 2a)`` and ``mu^2 = d (mod 4a^2)``."""
    if gcd(nu, 2 * a) != 1 or (nu * nu - d) % (4 * a):
        raise ValueError("nu not a square root of d mod 4a")
    m = 2 * a * a
    if a == 1:
        return nu % m
    k = pow(nu, -1, a) * ((d - nu * nu) // (4 * a)) % a
    mu = (nu + 2 * a * k) % m
    assert (mu * mu - d) % (4 * a * a) == 0
    return mu


def nu_candidates(a: int, d: int, p: int, q: int) -> list[int]:
    """All ``nu mod 2a`` with ``p = nu*q (mod 2a)`` and ``nu^2 = d (mod 4a)``."""
    m = 2 * a
    return [nu for nu in range(m)
            if gcd(nu, m) == 1 and (p - nu * q) % m == 0 and (nu * nu - d) % (4 * a) == 0]


def _residue_orbit(x: int, y: int, d: int, m: int) -> set[tuple[int, int]]:
    unit = fundamental_unit(d)
    t, du, u = unit.t % m, unit.d * unit.u % m, unit.u % m
    start = (x % m, y % m)
    seen = {start}
    cx, cy = start
    while True:
        cx, cy = (t * cx + du * cy) % m, (u * cx + t * cy) % m
        if (cx, cy) == start:
            return seen
        seen.add((cx, cy))


def enum_div_lifted(a: int, d_max: int) -> list[tuple[int, tuple[int, int]]]:
    """``Div(a)`` labels ``(d, mu_class)`` obtained by lifting ``nu mod 2a``.

    Independent of :func:`enum_div`: solutions of ``p^2 - d*q^2 = 4a*alpha`` are
    found without any congruence, and each residue ``(p, q) mod 2a`` on a class
    orbit yields ``nu`` with ``p = nu*q (mod 2a)``, lifted to ``mu mod 2a^2``.
    """
    if a < 2:
        raise ValueError("a must be >= 2")
    m = 2 * a
    step = 4 * a * a
    squares = {mu * mu % step for mu in unit_classes(a)}
    out = set()
    for d in range(1, d_max + 1):
        if d % step not in squares:
            continue
        for s in (1, -1):
            n = 4 * a * s
            residues: set[tuple[int, int]] = set()
            if is_square(d):
                residues = {(w.x % m, w.y % m) for w in solve_square_d(isqrt(d), n)}
            else:
                for rep in solve_norm_classes(d, n):
                    residues |= _residue_orbit(rep.x, rep.y, d, m)
            for p, q in residues:
                for nu in nu_candidates(a, d, p, q):
                    out.add((d, _mu_class(a, mu_lift(a, d, nu))))
    return sorted(out)

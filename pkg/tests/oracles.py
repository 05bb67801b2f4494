"""Brute-force reference computations, deliberately independent of the solver code."""
from __future__ import annotations

from math import isqrt

import numpy as np


def brute_pell(d: int, n: int, y_bound: int) -> set[tuple[int, int]]:
    """Every ``(x, y)`` with ``x^2 - d y^2 = n`` and ``|y| <= y_bound``."""
    out = set()
    for y in range(0, y_bound + 1):
        v = n + d * y * y
        if v < 0:
            continue
        r = isqrt(v)
        if r * r == v:
            for x in {r, -r}:
                out.add((x, y))
                out.add((-x, -y))
    return out


def brute_pell_table(d: int, n_abs: int, y_bound: int) -> dict[int, set[tuple[int, int]]]:
    """``{N: solutions}`` for all ``0 < |N| <= n_abs`` and ``|y| <= y_bound`` at once.

    For each ``y`` only the few ``x`` with ``|x^2 - d y^2| <= n_abs`` are tested.
    """
    y = np.arange(0, y_bound + 1, dtype=np.int64)
    v = d * y * y
    lo = np.floor(np.sqrt(np.maximum(v - n_abs, 0).astype(np.float64))).astype(np.int64)
    lo = np.maximum(lo - 2, 0)
    table: dict[int, set[tuple[int, int]]] = {}
    span = 2 * isqrt(n_abs) + 6
    for k in range(span):
        x = lo + k
        n = x * x - v
        mask = (np.abs(n) <= n_abs) & (n != 0)
        for xi, yi, ni in zip(x[mask].tolist(), y[mask].tolist(), n[mask].tolist()):
            s = table.setdefault(ni, set())
            s.update({(xi, yi), (-xi, yi), (xi, -yi), (-xi, -yi)})
    return table


def nagell_box(d: int, n: int, t: int, u: int) -> set[tuple[int, int]]:
    """Solutions inside the classical box that holds a representative of every class."""
    if n > 0:
        ymax = isqrt(u * u * n // (2 * (t + 1))) + 1
    else:
        ymax = isqrt(u * u * (-n) // (2 * (t - 1))) + 1
    return brute_pell(d, n, ymax)


def brute_fundamental_unit(d: int, u_max: int = 10 ** 6) -> tuple[int, int]:
    for u in range(1, u_max):
        v = 1 + d * u * u
        t = isqrt(v)
        if t * t == v:
            return t, u
    raise AssertionError("no unit found")


def brute_pq(a: int, d: int, mu: int, q_bound: int) -> set[tuple[int, int, int]]:
    """``(alpha, p, q)``, ``0 < q <= q_bound``, with ``p^2 - dq^2 = 4a*alpha`` and ``p = mu q (mod 2a)``."""
    out = set()
    for s in (1, -1):
        for q in range(1, q_bound + 1):
            v = 4 * a * s + d * q * q
            if v < 0:
                continue
            r = isqrt(v)
            if r * r == v:
                for p in {r, -r}:
                    if (p - mu * q) % (2 * a) == 0:
                        out.add((s, p, q))
    return out


def brute_xy(a: int, d: int, mu: int, y_bound: int, mod_d: bool = True) -> set[tuple[int, int]]:
    """``(x, y)``, ``x > 0``, ``|y| <= y_bound`` with ``x^2 - dy^2 = 4a^2``, ``x = mu y (mod 2a^2)``
    and (if ``mod_d``) ``x = +-2a (mod d)``."""
    out = set()
    for y in range(-y_bound, y_bound + 1):
        v = 4 * a * a + d * y * y
        r = isqrt(v)
        if r * r != v or r == 0:
            continue
        if (r - mu * y) % (2 * a * a):
            continue
        if mod_d and (r - 2 * a) % d and (r + 2 * a) % d:
            continue
        out.add((r, y))
    return out

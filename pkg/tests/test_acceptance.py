"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or ``python tests/test_acceptance.py``.
"""
import sys
import time
from math import gcd
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from oracles import brute_pell_table, brute_pq, brute_xy  # noqa: E402

from k3mukai.enumeration import enum_D, family, mu_lift  # noqa: E402
from k3mukai.lattice_core import determinant, discriminant_group, gamma, signature  # noqa: E402
from k3mukai.mukai import char_compat_check, ny_presentation  # noqa: E402
from k3mukai.oracle import almost_primitive_check, decide  # noqa: E402
from k3mukai.pell import class_orbit_window, fundamental_unit, is_square  # noqa: E402
from k3mukai.picard2 import VectorXY, gram_of, make, unit_classes, valid_triples  # noqa: E402

RESULTS: dict[int, str] = {}


def report(n: int, ok: bool, title: str, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {title}" + (f" ({detail})" if detail else "")
    RESULTS[n] = line
    print(line)


def grid(d_max):
    for a in range(2, 7):
        yield from valid_triples(a, d_max)


def test_criterion_1_decision_witnesses():
    t0 = time.perf_counter()
    problems = []
    dec = decide(make(2, 17, 1))
    trip = {(w.alpha_sign, w.p, w.q): w for w in dec.witnesses}
    if not dec.verdict or (1, 5, 1) not in trip or (-1, -3, 1) not in trip:
        problems.append("(2,17,1) witnesses")
    else:
        P = dec.P
        for key, xy in (((1, 5, 1), (21, 5)), ((-1, -3, 1), (13, -3))):
            x, y = trip[key].associated_xy
            ok = ((x, y) == xy and x * x - 17 * y * y == 16 and (x - y) % 8 == 0
                  and char_compat_check(P, VectorXY(x, y)))
            if not ok:
                problems.append(f"associated {xy}")
    if decide(make(2, 49, 1)).verdict:
        problems.append("(2,49,1) should be NO")
    dec = decide(make(3, 37, 1))
    w37 = [w for w in dec.witnesses if (w.alpha_sign, w.p, w.q) == (1, 7, 1)]
    if not dec.verdict or not w37 or w37[0].associated_xy != (43, 7):
        problems.append("(3,37,1) witness")
    elapsed = time.perf_counter() - t0
    if elapsed >= 1:
        problems.append(f"took {elapsed:.2f}s")
    report(1, not problems, "decision witnesses", "; ".join(problems) or f"{elapsed:.3f}s")
    assert not problems


def test_criterion_2_route_equivalence():
    t0 = time.perf_counter()
    total = disagree = 0
    for P in grid(2000):
        total += 1
        if not decide(P).route_agreement:
            disagree += 1
    elapsed = time.perf_counter() - t0
    ok = disagree == 0 and elapsed <= 300
    report(2, ok, "route equivalence", f"{total} instances, {disagree} disagreements, {elapsed:.1f}s")
    assert ok


def test_criterion_3_brute_force_oracle():
    bound = 1000
    problems, beyond = [], []
    n_inst = n_yes = 0
    for P in grid(500):
        n_inst += 1
        dec = decide(P, q_max=bound, cross_check=False)
        full = decide(P, cross_check=False)
        verdict = full.verdict
        listed = {(w.alpha_sign, w.p, w.q) for w in dec.witnesses if w.q > 0}
        pq = brute_pq(P.a, P.d, P.mu, bound)
        xy = brute_xy(P.a, P.d, P.mu, bound)
        assoc = {w.associated_xy for w in dec.witnesses if abs(w.associated_xy[1]) <= bound}
        if pq != listed or xy != assoc:
            problems.append(f"window mismatch at {P.to_json()}")
        if (pq or xy) and not verdict:
            problems.append(f"solver misses {P.to_json()}")
        if verdict:
            n_yes += 1
            if not pq:
                # witness outside the scan window: confirm it by substitution
                w = full.witnesses[0]
                if w.p ** 2 - P.d * w.q ** 2 != 4 * P.a * w.alpha_sign or (w.p - P.mu * w.q) % (2 * P.a):
                    problems.append(f"bad witness {P.to_json()}")
                beyond.append((P.a, P.d, P.mu, w.q))
        for w in full.witnesses + dec.witnesses:
            if not almost_primitive_check(w.alpha_sign, w.p, w.q, P.a):
                problems.append(f"not almost primitive {P.to_json()} {w.p, w.q}")
    detail = (f"{n_inst} instances, {n_yes} YES, exact agreement inside |q|,|y| <= {bound}; "
              f"{len(beyond)} YES whose witnesses all lie beyond the window, (a,d,mu,q): {beyond}")
    report(3, not problems, "brute-force oracle", "; ".join(problems[:3]) or detail)
    assert not problems


def _extended_scan(a, d, mu, alpha, q_stop):
    return any(t[0] == alpha for t in brute_pq(a, d, mu, q_stop))


def test_criterion_4_divisor_tables():
    problems = []
    plus = {lab.d: lab for lab in enum_D(2, 1, 1, 200)}
    minus = {lab.d: lab for lab in enum_D(2, 1, -1, 200)}
    if not {1, 17, 113, 161} <= set(plus):
        problems.append("missing alpha=+1 members")
    if set(plus) & {49, 65, 81, 145}:
        problems.append("excluded value present")
    if not {17, 33, 129, 177} <= set(minus):
        problems.append("missing alpha=-1 members")
    notes = []
    for alpha, table in ((1, plus), (-1, minus)):
        for d in (97, 193):
            solver = d in table
            window = _extended_scan(2, d, 1, alpha, 1000)
            if window and not solver:
                problems.append(f"brute finds {d} (alpha={alpha}), solver does not")
            elif solver and not window:
                q = max(w[2] for w in table[d].witnesses)
                if not _extended_scan(2, d, 1, alpha, q):
                    problems.append(f"{d} (alpha={alpha}) not confirmed by extended scan")
                notes.append(f"{d} alpha={alpha}: q={q} confirmed by scan to |q|<={q}")
            else:
                notes.append(f"{d} alpha={alpha}: {'member' if solver else 'non-member'}")
    report(4, not problems, "divisor tables", "; ".join(problems) or "; ".join(notes))
    assert not problems


def test_criterion_5_family_congruence_and_decide():
    problems = []
    n = 0
    for a in range(1, 11):
        for mu in unit_classes(a):
            for s in (1, -1):
                for _, d, _ in family(a, mu, s, range(-20, 21)):
                    n += 1
                    if (d - mu * mu) % (4 * a * a):
                        problems.append(f"congruence {a, mu, s, d}")
                    if a >= 2 and not decide(make(a, d, mu), cross_check=False).verdict:
                        problems.append(f"decide NO {a, mu, s, d}")
    RESULTS_5["congruence"] = (not problems, f"{n} family members, congruence and decide=YES "
                                            f"(a=1: congruence only, the oracle needs a>=2)")
    _report_5()
    assert not problems, problems[:5]


def _window_counts():
    short = []
    for a in range(1, 11):
        for mu in unit_classes(a):
            for s in (1, -1):
                ds = {d for _, d, _ in family(a, mu, s, range(-50, 51))}
                if len(ds) < 10:
                    short.append((a, mu, s, len(ds)))
    return short


@pytest.mark.xfail(strict=True, reason="for a=10 the window t in [-50,50] holds only 10 admissible t, "
                                       "and one of them gives d<0 for mu=+-19, +-63 with alpha=+1")
def test_criterion_5_family_window_count():
    short = _window_counts()
    RESULTS_5["count"] = (not short, "at least 10 distinct d per (a,+-mu,alpha), t in [-50,50]: "
                                     + (f"short for (a,mu,alpha,count) {short}" if short else "ok"))
    _report_5()
    assert not short


RESULTS_5: dict[str, tuple[bool, str]] = {}


def _report_5():
    ok = all(v[0] for v in RESULTS_5.values())
    report(5, ok, "family properties", "; ".join(v[1] for v in RESULTS_5.values()))


def test_criterion_6_structural_invariants():
    t0 = time.perf_counter()
    problems = []
    n = 0
    for P in grid(2000):
        n += 1
        L = gram_of(P)
        if not L.is_even or signature(L) != (1, 1) or determinant(L) != -P.d:
            problems.append(f"gram {P.to_json()}")
        grp = discriminant_group(L)
        if not grp.is_cyclic or grp.order != P.d:
            problems.append(f"discriminant {P.to_json()}")
        pres = ny_presentation(P)
        if determinant(pres.gram) != -P.d or gamma(pres.gram, pres.h) != 1:
            problems.append(f"N(Y) {P.to_json()}")
    elapsed = time.perf_counter() - t0
    if elapsed > 120:
        problems.append(f"took {elapsed:.0f}s")
    report(6, not problems, "structural invariants", "; ".join(problems[:3]) or f"{n} instances, {elapsed:.1f}s")
    assert not problems


CLASSICAL = {2: (3, 2), 3: (2, 1), 5: (9, 4), 6: (5, 2), 7: (8, 3), 10: (19, 6), 13: (649, 180), 17: (33, 8)}


def test_criterion_7_pell_engine():
    problems = []
    for d, tu in CLASSICAL.items():
        u = fundamental_unit(d)
        if (u.t, u.u) != tu:
            problems.append(f"unit {d}")
    t0 = time.perf_counter()
    checked = 0
    for d in range(2, 501):
        if is_square(d):
            continue
        table = brute_pell_table(d, 100, 10 ** 4)
        for n in range(-100, 101):
            if n == 0:
                continue
            checked += 1
            if class_orbit_window(d, n, 10 ** 4) != table.get(n, set()):
                problems.append(f"(d, N) = ({d}, {n})")
    elapsed = time.perf_counter() - t0
    report(7, not problems, "Pell engine",
           "; ".join(problems[:3]) or f"8 classical units, {checked} (d, N) pairs with |y| <= 10^4, {elapsed:.1f}s")
    assert not problems


def test_criterion_8_mu_lift():
    problems = []
    n = 0
    for a in range(1, 7):
        m = 2 * a * a
        for d in range(1, 501):
            for nu in range(2 * a):
                if (nu * nu - d) % (4 * a) or gcd(nu, 2 * a) != 1:
                    continue
                n += 1
                hits = [mu for mu in range(1, m + 1)
                        if (mu - nu) % (2 * a) == 0 and (mu * mu - d) % (4 * a * a) == 0]
                if len(hits) != 1 or hits[0] % m != mu_lift(a, d, nu):
                    problems.append(f"{a, d, nu}: {hits}")
    report(8, not problems, "mu-lift uniqueness", "; ".join(problems[:3]) or f"{n} (a, d, nu) scanned")
    assert not problems


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))

"""Command-line front end.

Exit codes: 0 success (or YES for ``decide``), 1 NO for ``decide``,
2 usage or validation error.  Output goes to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from math import isqrt
from typing import Optional, Sequence

from . import enumeration, mukai, oracle, pell, picard2
from .lattice_core import GramLattice, LatticeError, determinant
from .serialize import dumps, parse_int

EXIT_OK, EXIT_NO, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_json(text: str):
    if text == "-":
        text = sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc.msg}") from None


def _polarized(args) -> picard2.PolarizedRank2:
    """``--a/--d/--mu`` or ``--lattice`` holding either accepted JSON form."""
    if getattr(args, "lattice", None):
        doc = _read_json(args.lattice)
        if "gram" in doc:
            P, _ = picard2.invariants_from(GramLattice(doc["gram"]), [parse_int(c) for c in doc["h"]])
            return P
        return picard2.make(parse_int(doc["a"]), parse_int(doc["d"]), parse_int(doc["mu"]))
    if args.a is None or args.d is None or args.mu is None:
        raise UsageError("either --lattice or all of --a, --d, --mu are required")
    return picard2.make(args.a, args.d, args.mu)


def _add_triple(p: argparse.ArgumentParser) -> None:
    p.add_argument("--a", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--mu", type=int)
    p.add_argument("--lattice", help='JSON {"a","d","mu"} or {"gram","h"}; "-" reads stdin')


def _parse_pairs(text: str) -> list[tuple[int, int]]:
    pairs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        x, y = chunk.split(",")
        pairs.append((int(x), int(y)))
    return pairs


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="k3mukai", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("decide", help="decide Y = X for invariants (a, d, +-mu)")
    _add_triple(p)
    p.add_argument("--json", action="store_true", help="JSON output (the default)")
    p.add_argument("--q-max", type=int, default=None, help="list every witness with q <= Q_MAX")

    p = sub.add_parser("enumerate", help="divisorial conditions (d, +-mu) with d <= MAX_D")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--max-d", type=int, required=True)
    p.add_argument("--mu", type=int)
    p.add_argument("--alpha", type=int, choices=(1, -1))
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.add_argument("--parallel", action="store_true")

    p = sub.add_parser("invariants", help="(a, d, +-mu) of a rank-2 Gram matrix and polarization")
    p.add_argument("--gram", required=True, help='JSON matrix, or "-" for stdin')
    p.add_argument("--h", required=True, help="JSON integer vector")

    p = sub.add_parser("solve-pell", help="solve x^2 - d y^2 = N")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mod", type=int)
    p.add_argument("--pairs", help='allowed residues "x,y;x,y;..." modulo --mod')

    p = sub.add_parser("family", help="q = 1 family of discriminants")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--mu", type=int, required=True)
    p.add_argument("--alpha", type=int, choices=(1, -1), required=True)
    p.add_argument("--t-min", type=int, default=-10)
    p.add_argument("--t-max", type=int, default=10)

    p = sub.add_parser("mukai", help="presentation of N(Y) and the transcendental index")
    _add_triple(p)

    p = sub.add_parser("mu-lift", help="lift nu mod 2a to mu mod 2a^2")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--nu", type=int, required=True)
    return parser


def _cmd_decide(args, out) -> int:
    P = _polarized(args)
    dec = oracle.decide(P, q_max=args.q_max)
    out.write(dumps(dec) + "\n")
    return EXIT_OK if dec.verdict else EXIT_NO


TSV_COLUMNS = ("d", "mu", "alpha", "p", "q", "x", "y", "square_discriminant")


def _cmd_enumerate(args, out) -> int:
    a = args.a
    alphas = (args.alpha,) if args.alpha else (1, -1)
    if args.mu is not None:
        labels = []
        for s in alphas:
            labels.extend(enumeration.enum_D(a, args.mu, s, args.max_d, parallel=args.parallel))
        merged: dict = {}
        for lab in sorted(labels, key=lambda l: (l.d, l.mu)):
            key = (lab.d, lab.mu_class)
            prev = merged.get(key)
            merged[key] = lab if prev is None else enumeration.DivisorLabel(
                a, lab.d, lab.mu_class, prev.witnesses + lab.witnesses)
        labels = list(merged.values())
    else:
        labels = enumeration.enum_div(a, args.max_d, alphas, parallel=args.parallel)
    if args.format == "json":
        out.write(dumps({"a": a, "max_d": args.max_d, "labels": labels}) + "\n")
        return EXIT_OK
    out.write("\t".join(TSV_COLUMNS) + "\n")
    P_cache = {}
    for lab in labels:
        P = P_cache.setdefault((lab.d, lab.mu), picard2.PolarizedRank2(a, lab.d, lab.mu))
        for s, p, q in lab.witnesses:
            x, y = oracle.associated(s, p, q, P)
            row = (lab.d, lab.mu, s, p, q, x, y, str(lab.square_discriminant).lower())
            out.write("\t".join(str(v) for v in row) + "\n")
    return EXIT_OK


def _cmd_invariants(args, out) -> int:
    gram = _read_json(args.gram)
    if isinstance(gram, dict):
        gram = gram["gram"]
    h = _read_json(args.h)
    P, orient = picard2.invariants_from(GramLattice(gram), [parse_int(c) for c in h])
    doc = P.to_json()
    doc["delta"] = list(orient.delta)
    out.write(dumps(doc) + "\n")
    return EXIT_OK


def _cmd_solve_pell(args, out) -> int:
    d, n = args.d, args.n
    if d < 1 or n == 0:
        raise UsageError("need d >= 1 and N != 0")
    doc: dict = {"d": d, "n": n}
    if pell.is_square(d):
        doc["square_d"] = True
        doc["solutions"] = [[w.x, w.y] for w in pell.solve_square_d(isqrt(d), n)]
    else:
        u = pell.fundamental_unit(d)
        doc["square_d"] = False
        doc["unit"] = [u.t, u.u]
        doc["classes"] = [[w.x, w.y] for w in pell.solve_norm_classes(d, n)]
    if args.mod is not None or args.pairs is not None:
        if args.mod is None or args.pairs is None:
            raise UsageError("--mod and --pairs go together")
        try:
            pairs = _parse_pairs(args.pairs)
        except ValueError:
            raise UsageError("--pairs must look like 'x,y;x,y'") from None
        inst = pell.PellInstance(d, n, pell.ResidueConstraint.pairs(args.mod, pairs))
        w = pell.exists_constrained(inst)
        doc["modulus"] = args.mod
        doc["witness"] = None if w is None else [w.x, w.y]
    out.write(dumps(doc) + "\n")
    return EXIT_OK


def _cmd_family(args, out) -> int:
    rows = enumeration.family(args.a, args.mu, args.alpha, range(args.t_min, args.t_max + 1))
    doc = {"a": args.a, "mu": args.mu, "alpha": args.alpha,
           "members": [{"t": t, "d": d, "p": p} for t, d, p in rows]}
    out.write(dumps(doc) + "\n")
    return EXIT_OK


def _cmd_mukai(args, out) -> int:
    P = _polarized(args)
    pres = mukai.ny_presentation(P)
    doc = {
        "ny_gram": [list(r) for r in pres.gram.gram],
        "h": list(pres.h),
        "det_nx": determinant(picard2.gram_of(P)),
        "det_ny": determinant(pres.gram),
        "q": mukai.transcendental_index(P.a, 1),
    }
    out.write(dumps(doc) + "\n")
    return EXIT_OK


def _cmd_mu_lift(args, out) -> int:
    mu = enumeration.mu_lift(args.a, args.d, args.nu)
    out.write(dumps({"a": args.a, "d": args.d, "nu": args.nu, "mu": mu}) + "\n")
    return EXIT_OK


COMMANDS = {
    "decide": _cmd_decide,
    "enumerate": _cmd_enumerate,
    "invariants": _cmd_invariants,
    "solve-pell": _cmd_solve_pell,
    "family": _cmd_family,
    "mukai": _cmd_mukai,
    "mu-lift": _cmd_mu_lift,
}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
    except (ValueError, LatticeError, KeyError, TypeError) as exc:
        err.write(f"invalid input: {exc}\n")
    return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

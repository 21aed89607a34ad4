"""Command-line interface: ``grasscode <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import verify as checks
from .classify7 import classify, fingerprint, sample_report, spectrum_c37
from .errors import GrassError, MethodInapplicable
from .extalg import AltForm, parse_form
from .gf import field_new
from .grassmann import (check_budget, code_params, codeword_weight_direct, triple_count_weight,
                        write_generator_csv)
from .pfaffian import rank_2form
from .weightvar import is_nondegenerate, nogin_c2_weight, weight_via_reduction, x_variety

METHODS = ("direct", "formula", "triples")


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _load_form(path: str) -> AltForm:
    with open(path) as fh:
        return parse_form(fh.read())


def _weight(w: AltForm, method: str) -> int:
    if method == "direct":
        return codeword_weight_direct(w)
    if method == "formula":
        if w.grade == 2:
            r = rank_2form(w) // 2
            return nogin_c2_weight(r, w.m, w.field.q)
        if w.grade == 3:
            return weight_via_reduction(w)
        raise MethodInapplicable("the formula method covers grades 2 and 3")
    if method == "triples":
        if w.grade != 3 or not w.field.is_prime:
            raise MethodInapplicable("triple counting needs a 3-form over a prime field")
        return triple_count_weight(w)
    raise ValueError(f"unknown method {method}")


def cmd_params(args) -> int:
    p = code_params(args.l, args.m, args.q)
    if args.json:
        _emit({"l": args.l, "m": args.m, "q": args.q, "n": p.n, "k": p.k})
    else:
        print(f"n={p.n} k={p.k}")
    return 0


def cmd_weight(args) -> int:
    w = _load_form(args.form)
    if w.is_zero():
        raise GrassError("the zero form has no codeword weight")
    methods = METHODS if args.all else (args.method,)
    results = {}
    for meth in methods:
        try:
            results[meth] = _weight(w, meth)
        except MethodInapplicable as exc:
            if not args.all:
                raise
            print(f"skip {meth}: {exc}", file=sys.stderr)
    values = set(results.values())
    if args.json:
        _emit({"weights": results, "agree": len(values) == 1})
    else:
        for meth, v in results.items():
            print(f"{meth}: {v}")
    if len(values) != 1:
        print("methods disagree", file=sys.stderr)
        return 1
    return 0


def cmd_classify(args) -> int:
    w = _load_form(args.form)
    cid = classify(w)
    fp = fingerprint(w)
    _emit({"class": cid.index, "variant": cid.char_variant, "r": fp.r, "x1_card": fp.x1_card})
    return 0


def cmd_xvariety(args) -> int:
    w = _load_form(args.form)
    if not is_nondegenerate(w):
        raise GrassError("x-varieties need a non-degenerate form")
    pts = x_variety(w, args.i)
    out = {"form": args.form, "i": args.i, "cardinality": len(pts)}
    if args.points:
        out["points"] = [list(p) for p in pts]
    _emit(out)
    return 0


def cmd_spectrum37(args) -> int:
    spec = field_new(args.q)
    entries = spectrum_c37(spec)
    p = code_params(3, 7, args.q)
    if args.json:
        _emit({"q": args.q, "n": p.n, "k": p.k, "entries": [
            {"weight": e.weight, "count": str(e.count), "classes": [str(c) for c in e.classes]}
            for e in entries]})
    else:
        for e in entries:
            print(f"{e.weight}\t{e.count}\t{','.join(str(c) for c in e.classes)}")
    return 0


def cmd_sample(args) -> int:
    spec = field_new(args.q)
    rows = sample_report(spec, args.count, args.seed, workers=args.threads)
    ok = all(abs(r["observed"] - r["expected"]) <= args.sigmas * r["sigma"] for r in rows)
    if args.json:
        _emit({"q": args.q, "count": args.count, "seed": args.seed, "classes": rows, "within_bounds": ok})
    else:
        for r in rows:
            print(f"class {r['class']:2d}  observed {r['observed']:7d}  expected {r['expected']:12.3f}"
                  f"  z {r['z']:+.3f}")
    return 0 if ok else 1


def cmd_genmatrix(args) -> int:
    spec = field_new(args.q)
    p = code_params(args.l, args.m, args.q)
    check_budget(p.n * p.k, "generator matrix export")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_generator_csv(fh, args.l, args.m, spec)
    else:
        write_generator_csv(sys.stdout, args.l, args.m, spec)
    return 0


def cmd_verify(args) -> int:
    qs = [int(x) for x in args.q.split(",")] if args.q else [2]
    if args.scope == "identities":
        results = list(checks.identity_checks())
    elif args.scope == "tables":
        results = [c for q in qs for c in checks.table_checks(q)]
    else:
        results = [c for q in qs for c in checks.oracle_checks(q)]
    for name, passed, detail in results:
        print(f"{'PASS' if passed else 'FAIL'} {name} ({detail})")
    return 0 if all(p for _, p, _ in results) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="grasscode", description="Weights of Grassmann-code codewords.")
    ap.add_argument("--threads", type=int, default=None, help="worker processes (default: all cores)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="code length and dimension of C(l, m)")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("weight", help="codeword weight of a form file")
    p.add_argument("--form", required=True)
    p.add_argument("--method", choices=METHODS, default="direct")
    p.add_argument("--all", action="store_true", help="run every applicable method and compare")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_weight)

    p = sub.add_parser("classify", help="class of a 3-form on F^7")
    p.add_argument("--form", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("xvariety", help="weight variety X_i of a non-degenerate 3-form")
    p.add_argument("--form", required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--points", action="store_true")
    p.set_defaults(func=cmd_xvariety)

    p = sub.add_parser("spectrum37", help="weight spectrum of C(3,7)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_spectrum37)

    p = sub.add_parser("sample", help="Monte Carlo class frequencies of random 3-forms on F^7")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--sigmas", type=float, default=4.0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("genmatrix", help="generator matrix of C(l, m) as CSV")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_genmatrix)

    p = sub.add_parser("verify", help="run consistency checks")
    p.add_argument("scope", choices=("identities", "tables", "oracles"))
    p.add_argument("--q", help="comma-separated field sizes (default 2)")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads is None:
        args.threads = os.cpu_count() or 1
    try:
        return args.func(args)
    except (GrassError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: point counts, stratum classification, fibre data,
Hodge diamonds, intersection ranks, reference tables and the verification
pipeline.  Exit status 0 on success, 1 on a verification mismatch, 2 on
usage errors."""
from __future__ import annotations

import argparse
import csv
import json
import sys
from math import isqrt

from .counting import count_many, oracle_count_torus, count_torus_points
from .elliptic import classify_fibres, j_invariant, weierstrass_model
from .fields import build_context, find_integer_witness, normalize_param
from .geometry import (
    SUBFAMILY_CENSUS,
    classify_subfamily,
    h12_schoen,
    interior_nodes,
    phi,
    smooth_model_exists,
)
from .intersection import build_and_rank
from .livne import livne_prime_set, verify_family
from .refdata import (
    COUNT_PRIMES,
    EXTENDED_TRACE_PRIMES,
    EXTENDED_X11449,
    FAMILIES,
    FAMILY_ORDER,
    REFERENCE_COUNTS,
    REFERENCE_TRACES,
    TRACE_PRIMES,
)
from .toric import batyrev_hodge, hodge_diamond


def _int_tuple(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace(":", ",").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated integer tuple, got {text!r}")


def _primes_in(lo: int, hi: int):
    out = []
    for n in range(max(lo, 2), hi + 1):
        if all(n % d for d in range(2, isqrt(n) + 1)):
            out.append(n)
    return out


def _prime_list(text: str) -> list:
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
            return _primes_in(lo, hi)
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected primes as 'p1,p2,...' or 'lo..hi', got {text!r}"
        )


def _cmd_count(args) -> int:
    a = normalize_param(args.a)
    breakdowns = count_many(a, args.primes, args.workers)
    for bd in breakdowns:
        if args.breakdown:
            print(
                f"p={bd.p} total={bd.total} torus_sum={bd.torus_sum} "
                f"boundary={bd.boundary} boundary_resolution={bd.boundary_resolution} "
                f"interior_resolution={bd.interior_resolution} rho={bd.rho_correction}"
            )
        else:
            print(f"{bd.p} {bd.total}")
    return 0


def _cmd_classify(args) -> int:
    b = tuple(args.b)
    label = classify_subfamily(b)
    h12 = h12_schoen(b)
    nodes = interior_nodes(b)
    print(f"witness            {b}")
    print(f"parameter          {phi(b)}")
    print(f"stratum            F_{label.index}  {label.pattern}")
    print(f"dimension          {label.dimension}")
    print(f"nodes              {label.node_count}  (30 boundary + {len(nodes)} interior)")
    small = label.euler_small if label.euler_small is not None else "-"
    print(f"euler (big/mixed/small)  {label.euler_big}/{label.euler_mixed}/{small}")
    print(f"h12                {h12}")
    print(f"h11 (mixed)        {label.euler_mixed // 2 + h12}")
    print(f"small resolution   {'yes' if smooth_model_exists(b) else 'no'}")
    return 0


def _cmd_fibres(args) -> int:
    a, b, c = args.coeffs
    roots = []
    for x in (a, b, c):
        r = isqrt(x)
        if x <= 0 or r * r != x:
            raise ValueError(f"coefficient {x} is not a positive perfect square")
        roots.append(r)
    for f in classify_fibres(*roots):
        kind = f"I_{f.n}" if f.kind == "I" else f.kind
        loc = "infinity" if f.location == float("inf") else f.location
        print(f"t = {loc}: {kind}")
    if args.t is not None:
        j = j_invariant(a, b, c, args.t)
        print(f"j({args.t}) = {j}")
        c2, c1, c0 = weierstrass_model(a, b, c, args.t)
        print(f"weierstrass y^2 = x^3 + ({c2}) x^2 + ({c1}) x + ({c0})")
    return 0


def _cmd_hodge(args) -> int:
    if args.family is None:
        h11, h21, e = batyrev_hodge()
        print(f"generic anticanonical hypersurface: h11={h11} h21={h21} e={e}")
        return 0
    fam = FAMILIES.get(args.family)
    label = classify_subfamily(fam.witness)
    for resolution in ("big", "mixed", "small"):
        try:
            d = hodge_diamond(label.node_count, fam.h12, resolution, fam.witness)
        except ValueError:
            print(f"{resolution:6} no projective model")
            continue
        print(f"{resolution:6} h11={d.h11} h12={d.h12} e={d.euler}")
    return 0


def _cmd_wspace(args) -> int:
    a = normalize_param(args.a)
    witness = find_integer_witness(a)
    if witness is None:
        raise ValueError(f"{a} has no integer witness; no surfaces to pair")
    roots = tuple(abs(x) for x in witness) + (abs(sum(witness)),)
    h12 = h12_schoen(witness)
    split = build_and_rank(a, roots, h12)
    print(f"admissible pairs   {split.pairs}")
    print(f"rank / dim W       {split.rank}")
    print(f"dim V              {split.dim_V}")
    for row in split.matrix:
        print(" ".join(f"{x:3d}" for x in row))
    for note in split.warnings:
        print(f"warning: {note}")
    return 0


def _cmd_verify(args) -> int:
    keys = list(FAMILY_ORDER) if args.family == "all" else [args.family]
    mode = "assume_h11" if args.assume_h11 else "strict"
    reports = [verify_family(k, mode, args.workers) for k in keys]
    failed = False
    for rep in reports:
        print(f"{rep.family}: {rep.verdict}  (level {rep.level}, form {rep.form}, "
              f"{len(rep.prime_set)} primes)")
        for line in rep.mismatches + rep.conjecture_violations:
            print(f"  {line}")
        failed |= rep.verdict != "pass"
    if args.json:
        payload = [rep.as_dict() for rep in reports]
        with open(args.json, "w") as fh:
            json.dump(payload[0] if len(payload) == 1 else payload, fh, indent=2)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["family", "p", "count", "b_p", "h", "trace",
                             "ref_count", "ref_trace", "count_ok", "trace_ok",
                             "eta_trace", "eta_ok"])
            for rep in reports:
                for r in rep.records:
                    writer.writerow([rep.family, r.p, r.count, r.b_p, r.h, r.trace,
                                     r.ref_count, r.ref_trace, r.count_ok, r.trace_ok,
                                     r.eta_trace, r.eta_ok])
    return 1 if failed else 0


def _cmd_oracle(args) -> int:
    a = normalize_param(args.a)
    ctx = build_context(args.p)
    fast = count_torus_points(ctx, a)
    brute = oracle_count_torus(ctx, a)
    print(f"p={args.p} fast={fast} brute={brute}")
    if fast != brute:
        print("MISMATCH")
        return 1
    return 0


def _cmd_tables(args) -> int:
    if args.which == 1:
        print("index dim nodes e_big e_mixed e_small pattern")
        for row in SUBFAMILY_CENSUS:
            small = row.euler_small if row.euler_small is not None else "-"
            print(f"F_{row.index:<4}{row.dimension:<4}{row.node_count:<6}"
                  f"{row.euler_big:<6}{row.euler_mixed:<8}{small:<8}{row.pattern}")
    elif args.which == 3:
        print("p " + " ".join(FAMILY_ORDER))
        for p in COUNT_PRIMES:
            print(f"{p} " + " ".join(str(REFERENCE_COUNTS[f][p]) for f in FAMILY_ORDER))
    elif args.which == 4:
        fams = [f for f in FAMILY_ORDER if f != "x9"]
        print("p " + " ".join(fams) + "   (x9 shares the x1 column)")
        for p in TRACE_PRIMES:
            print(f"{p} " + " ".join(str(REFERENCE_TRACES[f][p]) for f in fams))
        print("levels " + " ".join(str(FAMILIES.get(f).level) for f in fams))
    elif args.which == 5:
        print("p count trace   (family x11449)")
        for p in EXTENDED_TRACE_PRIMES:
            count, trace = EXTENDED_X11449[p]
            print(f"{p} {count} {trace}")
    else:
        raise ValueError(f"no table with id {args.which}; available: 1, 3, 4, 5")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cymod",
        description="Point counts, Hodge data and Frobenius-trace verification "
                    "for a family of nodal Calabi-Yau threefolds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="point counts of the resolved threefold")
    p.add_argument("--a", type=_int_tuple, required=True, help="parameter tuple a1,...,a6")
    p.add_argument("--primes", type=_prime_list, required=True,
                   help="primes as 'p1,p2,...' or a range 'lo..hi'")
    p.add_argument("--breakdown", action="store_true", help="print the full decomposition")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("classify", help="stratum and Hodge data of phi(b)")
    p.add_argument("--b", type=_int_tuple, required=True, help="witness tuple b1,...,b5")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("fibres", help="degenerate fibres of the elliptic family")
    p.add_argument("--coeffs", type=_int_tuple, required=True,
                   help="coefficient triple a,b,c (positive perfect squares)")
    p.add_argument("--t", type=int, default=None, help="also print j and a Weierstrass model at t")
    p.set_defaults(func=_cmd_fibres)

    p = sub.add_parser("hodge", help="Hodge numbers (generic hypersurface or a named family)")
    p.add_argument("--family", choices=list(FAMILY_ORDER), default=None)
    p.set_defaults(func=_cmd_hodge)

    p = sub.add_parser("wspace", help="intersection span of the ruled surfaces")
    p.add_argument("--a", type=_int_tuple, required=True, help="parameter tuple a1,...,a6")
    p.set_defaults(func=_cmd_wspace)

    p = sub.add_parser("verify", help="run the trace verification pipeline")
    p.add_argument("--family", required=True,
                   choices=list(FAMILY_ORDER) + ["all"])
    p.add_argument("--assume-h11", action="store_true",
                   help="use the stored h11 instead of strict extraction")
    p.add_argument("--json", default=None, help="write the full report to this path")
    p.add_argument("--csv", default=None, help="write per-prime records to this path")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="compare the torus count against brute force")
    p.add_argument("--a", type=_int_tuple, required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("tables", help="print an embedded reference table")
    p.add_argument("--which", type=int, required=True, help="table id: 1, 3, 4 or 5")
    p.set_defaults(func=_cmd_tables)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

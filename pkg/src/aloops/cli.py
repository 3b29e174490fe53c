"""Command-line front end.

Exit status: 0 on success, 1 on a validation failure (bad input file or an
unmet precondition), 2 when a resource cap is hit, 3 when an internal
consistency check fails.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import analysis, associated, constructions, search
from .errors import InternalCheckFailed, LoopError, ResourceLimit
from .perm import DEFAULT_CAP, PermGroup, read_group, stabilizer
from .report import analysis_report, format_report
from .table import read_table, write_table


def _emit_table(Q, out: str | None, header: list[str]) -> None:
    if out:
        write_table(Q, out, header)
        print(f"wrote {out} order={Q.n}")
    else:
        sys.stdout.write(Q.to_text(header))


def cmd_check(args) -> int:
    Q = read_table(args.table)
    sys.stdout.write(format_report(analysis_report(Q, cap=args.group_cap)))
    return 0


def cmd_construct(args) -> int:
    kind = args.kind
    if kind == "cyclic":
        Q = constructions.cyclic(args.n)
        params = f"n={args.n}"
    elif kind == "dih":
        G = constructions.cyclic(args.n)
        alpha = constructions.cyclic_automorphism(args.n, args.alpha)
        Q = constructions.dih(args.m, G, alpha)
        params = f"m={args.m} G=Z{args.n} alpha=u->{args.alpha}u"
    elif kind == "qab":
        Q = constructions.q_ab(args.n, args.a, args.b)
        params = f"n={args.n} a={args.a} b={args.b}"
    elif kind == "drapal":
        Q = constructions.drapal(args.p, args.t, args.convention)
        params = f"p={args.p} t={args.t} convention={args.convention}"
        if Q is None:
            print(f"drapal: construction conditions fail for {params}", file=sys.stderr)
            return 1
    elif kind == "fieldext":
        Q = constructions.field_ext_loop(args.p, args.a)
        params = f"p={args.p} a={args.a}"
    else:  # pragma: no cover - argparse restricts choices
        raise LoopError(kind)
    _emit_table(Q, args.output, [f"construction={kind} {params}"])
    return 0


def cmd_associate(args) -> int:
    Q = read_table(args.table)
    if args.kind == "lie":
        A = associated.lie_from_automorphic(Q)
        if args.output:
            associated.write_algebra(A, args.output)
            print(f"wrote {args.output} order={A.n}")
        else:
            sys.stdout.write(A.to_text())
        return 0
    B = associated.TRANSFORMS[args.kind](Q)
    _emit_table(B, args.output, [f"associated={args.kind} source={args.table}"])
    return 0


def _write_records(records, out_dir: str | None) -> None:
    sys.stdout.write(search.census_csv(records))
    if out_dir:
        d = Path(out_dir)
        d.mkdir(parents=True, exist_ok=True)
        for k, r in enumerate(records, 1):
            write_table(r.representative, d / f"rep_{r.order}_{k:03d}.loop",
                        [f"label={r.representative.label}", f"multiplicity={r.multiplicity}"])


def cmd_enumerate(args) -> int:
    if args.group:
        G = read_group(args.group, cap=args.group_cap)
        H = stabilizer(G, 0) if args.h == "stabilizer" else PermGroup([], degree=G.degree)
        if G.degree != args.order:
            raise LoopError(f"group degree {G.degree} differs from --order {args.order}")
        loops = search.algorithm_basic(G, H)
        pred = search.make_filter(args.filter)
        loops = [Q for Q in loops if pred(Q)]
    else:
        loops = search.naive_enumerate(args.order, args.filter, bound=args.naive_max)
    records = search.classify(loops, budget=args.aut_budget)
    print(f"# tables={len(loops)} classes={len(records)}")
    _write_records(records, args.out_dir)
    return 0


def cmd_census(args) -> int:
    if args.kind == "2p":
        records = search.census_2p(args.p, budget=args.aut_budget)
    elif args.kind == "p3":
        records = search.census_p3(args.p, budget=args.aut_budget)
    elif args.kind == "pq":
        records = search.census_pq(args.p, args.q, budget=args.aut_budget)
    else:
        records = search.field_ext_census(args.p, budget=args.aut_budget)
    nonassoc = sum(1 for r in records if not r.fingerprint[-1])
    print(f"classes={len(records)} nonassociative={nonassoc}")
    _write_records(records, args.out_dir)
    return 0


def cmd_simple_hunt(args) -> int:
    paths = sorted(Path(args.groups).glob("*.gens"))
    groups = [read_group(p, cap=args.group_cap) for p in paths]
    report = search.HuntReport()
    search.simple_hunt(args.order, groups, [p.stem for p in paths], report, jobs=args.jobs)
    for name, reason in report.filtered:
        print(f"# filtered {name}: {reason}")
    for name, count in report.searched:
        print(f"# searched {name}: loops={count}")
    for name, reason in report.skipped:
        print(f"# skipped {name}: {reason}")
    print(f"catalog={len(report.records)}")
    _write_records(report.records, args.out_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group-cap", type=int, default=DEFAULT_CAP,
                        help="max elements when materializing a group")
    common.add_argument("--naive-max", type=int, default=search.NAIVE_MAX,
                        help="max order for naive enumeration")
    common.add_argument("--aut-budget", type=int, default=analysis.DEFAULT_AUT_BUDGET,
                        help="node budget for isomorphism backtracking")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for hunts")
    ap = argparse.ArgumentParser(prog="aloops", description="Finite automorphic loop toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="analysis report for a table file")
    p.add_argument("table")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct", parents=[common], help="build a loop from a named family")
    p.add_argument("kind", choices=["cyclic", "dih", "qab", "drapal", "fieldext"])
    p.add_argument("--n", type=int, default=3, help="cyclic order / Z_n for dih / n for qab")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--alpha", type=int, default=-1, help="dih: alpha(u) = alpha*u mod n")
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--p", type=int, default=5)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--convention", choices=["A", "B"], default="A")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("associate", parents=[common], help="apply an associated-operation transform")
    p.add_argument("kind", choices=["bruck", "gamma", "lie"])
    p.add_argument("table")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_associate)

    p = sub.add_parser("enumerate", parents=[common], help="enumerate loops of a given order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--naive", action="store_true", help="Latin-square backtracking (default without --group)")
    p.add_argument("--group", help="generator file of a transitive group")
    p.add_argument("--h", choices=["stabilizer", "trivial"], default="stabilizer")
    p.add_argument("--filter", default=None, help="comma-separated property names")
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("census", parents=[common], help="classification counts for the named families")
    p.add_argument("kind", choices=["2p", "p3", "pq", "fieldext"])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("simple-hunt", parents=[common], help="search primitive groups for simple automorphic loops")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--groups", required=True, help="directory of *.gens files")
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_simple_hunt)
    return ap


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimit as exc:
        print(f"error: resource limit: {exc}", file=sys.stderr)
        return 2
    except InternalCheckFailed as exc:
        print(f"error: internal check failed: {exc}", file=sys.stderr)
        return 3
    except (LoopError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

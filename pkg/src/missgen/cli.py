"""Command-line interface.

Exit codes: 0 success, 1 invariant violation, 2 invalid input,
3 unsupported prime class, 4 prime search exhausted.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import digraph, report, tmap
from .errors import (
    AssumptionAExhausted,
    InvalidArgument,
    PipelineInconsistency,
    StructuralViolation,
    UnsupportedPrimeClass,
)
from .modmath import prime_context
from .verify import primes_upto, run_verify

EXIT_OK, EXIT_VIOLATION, EXIT_INVALID, EXIT_UNSUPPORTED, EXIT_EXHAUSTED = range(5)


def _fmt(xs) -> str:
    return ",".join(map(str, xs))


def _emit(args, doc, text: str) -> None:
    if args.json:
        sys.stdout.write(report.dumps_json(doc, args.reproducible))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_classify(args) -> int:
    doc = report.classification_doc(args.p)
    c = doc["counts"]
    text = "\n".join(
        [
            f"p = {args.p}",
            f"R  = {_fmt(doc['residues'])}",
            f"G  = {_fmt(doc['generators'])}",
            f"NG = {_fmt(doc['nongen_nonresidues'])}",
            f"|R| = {c['residues']}  |N| = {c['nonresidues']}  |G| = {c['generators']}"
            f"  |NG| = {c['nongen_nonresidues']}",
            f"M_p = {doc['M_p']}  N_p = {doc['N_p']}",
        ]
    )
    _emit(args, doc, text)
    return EXIT_OK


def cmd_missing(args) -> int:
    doc = report.missing_doc(args.p, args.g)
    lines = [f"p = {args.p}  M_p = {doc['M_p']}"]
    lines += [f"M({e['g']}) = {{{_fmt(e['missing'])}}}" for e in doc["sets"]]
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_triplet(args) -> int:
    rec = report.triplet_record(args.p)
    doc = dict(vars(rec))
    text = f"T({rec.p}) = ({rec.c}, {rec.n}, {rec.e})  phi(p-1) = {rec.phi}"
    if rec.q1:
        text += f"  q1 = {rec.q1}  q2 = {rec.q2}  S: {rec.s_character}"
    _emit(args, doc, text)
    return EXIT_OK


def cmd_table(args) -> int:
    pmax = args.pmax_opt or args.pmax
    if pmax is None or pmax < 3:
        raise InvalidArgument("table needs pmax >= 3")
    records = [report.triplet_record(p) for p in primes_upto(pmax)]
    if args.json:
        sys.stdout.write(report.dumps_json([vars(r) for r in records]))
    else:
        sys.stdout.write(report.dumps_csv(records))
    return EXIT_OK


def cmd_digraph(args) -> int:
    ctx = prime_context(args.p)
    dg = digraph.build_digraph(digraph.build_partition(ctx))
    dot = digraph.to_dot(dg)
    if args.dot:
        Path(args.dot).write_text(dot, encoding="utf-8", newline="\n")
    doc = report.digraph_doc(dg)
    if args.json:
        if args.dot:
            doc["dot_path"] = str(args.dot)
        sys.stdout.write(report.dumps_json(doc, args.reproducible))
    elif args.dot:
        c, n, e = doc["triplet"]
        print(f"wrote {args.dot}: {len(dg.edges)} vertices, {c} unicycle(s) of length {n}, e = {e}")
    else:
        sys.stdout.write(dot)
    return EXIT_OK


def cmd_factor(args) -> int:
    rep = tmap.factor_semiprime(args.N, args.bound)
    doc = report.factoring_doc(rep)
    i, j, p = rep.chosen
    tested = len(rep.search_trace)
    text = "\n".join(
        [
            f"N = {rep.N}: tested {tested} candidate(s) 2^i*N^j+1, first prime at (i, j) = ({i}, {j})",
            f"p = {p}",
            f"T(p) = {tuple(rep.triplet)} via {rep.method}",
            f"factors: {rep.recovered[0]} x {rep.recovered[1]}",
            report.REDUCTION_NOTE,
        ]
    )
    _emit(args, doc, text)
    return EXIT_OK


def cmd_scan(args) -> int:
    if args.random:
        scans = tmap.scan_random(args.random, args.max_n, args.seed)
        hit = sum(s.first_hit is not None for s in scans)
        doc = {
            "count": len(scans),
            "max_n": args.max_n,
            "seed": args.seed,
            "hit_rate": hit / len(scans),
            "scans": [report.scan_doc(s) for s in scans],
        }
        lines = [f"N={s.N} bound={s.bound} first_hit={s.first_hit}" for s in scans]
        lines.append(f"hit rate: {hit}/{len(scans)}")
        _emit(args, doc, "\n".join(lines))
        return EXIT_OK
    if args.N is None:
        raise InvalidArgument("scan needs N or --random COUNT")
    scan = tmap.scan_assumption_a(args.N, k=args.k, bound=args.bound, early_exit=not args.all)
    doc = report.scan_doc(scan)
    text = "\n".join(
        [
            f"N = {scan.N}, grid 1 <= i, j <= {scan.bound}",
            f"first hit (i, j <= bound): {scan.first_hit}",
            f"first hit (i, j <  bound): {scan.strict_first_hit}",
            f"hits recorded: {len(scan.hits)}" + ("" if scan.exhaustive else " (stopped early)"),
        ]
    )
    _emit(args, doc, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    pmax = args.pmax_opt or args.pmax
    if pmax is None or pmax < 3:
        raise InvalidArgument("verify needs pmax >= 3")
    res = run_verify(pmax)
    doc = {
        "pmax": pmax,
        "primes": res.primes,
        "checks_run": res.checks_run,
        "checks_passed": res.checks_passed,
        "violations": [vars(v) for v in res.violations],
    }
    lines = [f"verified primes <= {pmax}: {res.primes} primes, {res.checks_passed}/{res.checks_run} checks passed"]
    lines += [f"VIOLATION p={v.p} {v.invariant}: {v.message}" for v in res.violations]
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK if res.ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--reproducible", action="store_true", help="omit timestamps and timings")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="missgen", description="Missing generators of Z_p^*.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="residues, generators, NG")
    p.add_argument("p", type=int)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("missing", parents=[common], help="missing-generator sets M(g)")
    p.add_argument("p", type=int)
    p.add_argument("g", type=int, nargs="?")
    p.set_defaults(func=cmd_missing)

    p = sub.add_parser("triplet", parents=[common], help="T(p) = (c, n, e)")
    p.add_argument("p", type=int)
    p.set_defaults(func=cmd_triplet)

    for name, func, help_ in (
        ("table", cmd_table, "CSV of triplet records for odd primes <= pmax"),
        ("verify", cmd_verify, "run the invariant sweep for primes <= pmax"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("pmax", type=int, nargs="?")
        p.add_argument("--pmax", dest="pmax_opt", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("digraph", parents=[common], help="missing-generator digraph as DOT")
    p.add_argument("p", type=int)
    p.add_argument("--dot", metavar="PATH")
    p.set_defaults(func=cmd_digraph)

    p = sub.add_parser("factor", parents=[common], help="factor an odd semiprime via T(p)")
    p.add_argument("N", type=int)
    p.add_argument("--bound", type=int)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("scan", parents=[common], help="look for primes 2^i N^j + 1")
    p.add_argument("N", type=int, nargs="?")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--k", type=float)
    grp.add_argument("--bound", type=int)
    p.add_argument("--all", action="store_true", help="scan the whole grid")
    p.add_argument("--random", type=int, metavar="COUNT")
    p.add_argument("--max-n", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(message)s")
    try:
        return args.func(args)
    except UnsupportedPrimeClass as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except AssumptionAExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except (StructuralViolation, PipelineInconsistency) as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except InvalidArgument as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

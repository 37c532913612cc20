"""``dlab`` command line.

Exit codes: 0 when every executed check passes (Unknown is tolerated only on
stretch checks), 1 when a check fails, 2 when a required check ends Unknown,
3 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import checks
from .checks import CheckConfig, CheckReport, XContext
from .constructions import make_convex, make_double_chain, read_pointset, write_pointset
from .exact import (DEFAULT_BUDGET, chromatic_number, export_cnf_kcolor, verify_certificate,
                    write_certificate)
from .geometry import GeometryError
from .graphs import build_disjointness

EXIT_OK, EXIT_FAIL, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3


def _cfg(args) -> CheckConfig:
    return CheckConfig(budget=args.budget, seed=args.seed, sample=getattr(args, "sample", None),
                       cert_dir=Path(args.cert_dir) if args.cert_dir else None,
                       method=args.method, workers=args.workers)


def _emit(reports: list[CheckReport], args) -> int:
    for rep in reports:
        print(rep.to_json() if args.json else rep.line())
        if args.verbose:
            for part in rep.parts:
                print("    " + (part.to_json() if args.json else part.line()))
    if any(r.verdict == checks.FAIL for r in reports):
        return EXIT_FAIL
    if not all(r.acceptable for r in reports):
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.family == "convex":
        P = make_convex(args.n)
        comment = f"convex position, n={args.n}"
    else:
        P = make_double_chain(args.k, args.l)
        comment = f"double chain, lower k={args.k}, upper l={args.l}"
    if args.output:
        write_pointset(P, args.output, comment)
    else:
        print(len(P))
        for p in P:
            print(p.x, p.y)
    return EXIT_OK


def cmd_search_x(args) -> int:
    from .xsearch import SearchFailure, search_x

    try:
        cand = search_x(args.seed, args.budget)
    except SearchFailure as exc:
        for line in exc.trace:
            print(line)
        if exc.best is not None:
            print("\n".join(exc.best.lines()))
        print(f"search failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    for line in cand.trace:
        print(line)
    if args.output:
        write_pointset(cand.points, args.output,
                       f"canonical X: dlab search-x --seed {args.seed} --budget {args.budget}")
    return EXIT_OK


def cmd_chi(args) -> int:
    P = read_pointset(args.file)
    G = build_disjointness(P)
    cert = chromatic_number(G, budget=args.budget, method=args.method)
    ok = verify_certificate(G, cert)
    lo, hi = cert.bracket
    if cert.exact:
        print(f"chi = {cert.chi} ({cert.lower_evidence.line()}, nodes={cert.nodes})")
    else:
        print(f"chi in [{lo}, {hi}] (budget exhausted, nodes={cert.nodes})")
    if args.cert:
        write_certificate(cert, args.cert)
    if args.cnf_out:
        export_cnf_kcolor(G, cert.chi - 1, args.cnf_out)
        print(f"CNF for {cert.chi - 1}-colorability written to {args.cnf_out}")
    if not ok:
        print("certificate failed verification", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK if cert.exact else EXIT_UNKNOWN


def cmd_verify(args) -> int:
    cfg = _cfg(args)
    if args.what == "prop":
        ctx = None if args.id in (3, 6, 7) else XContext.load()
        return _emit([checks.cmd_prop(args.id, cfg, ctx)], args)
    if args.what == "lemma":
        return _emit([checks.cmd_lemma(args.id, cfg)], args)
    if args.what == "theorem2":
        return _emit([checks.cmd_theorem2(args.mode, cfg, count=args.count)], args)
    if args.what == "convex":
        return _emit(checks.cmd_convex_table(args.max_n, cfg), args)
    return _emit(checks.cmd_double_chain_table(cfg=cfg), args)


def cmd_bounds(args) -> int:
    row = checks.cmd_bounds(args.n)
    if args.json:
        print(json.dumps(row, sort_keys=True))
    else:
        print(f"n={row['n']}: {row['lower']} <= d(n) <= {row['upper']}"
              f"  (log term {row['upper_log_term']}, log base {row['log_base']});"
              f" double-chain lower bound {row['double_chain_lower']}"
              + ("  ALERT: lower bound exceeds upper bound" if row["alert"] else ""))
    return EXIT_OK


def run_report(cfg: CheckConfig) -> list[CheckReport]:
    """The standard battery, in a fixed order."""
    ctx = XContext.load()
    out = checks.cmd_convex_table(9, cfg)
    out += checks.cmd_double_chain_table(checks.DOUBLE_CHAIN_PAIRS[:-1], cfg)
    for pid in checks.PROP_IDS:
        out.append(checks.cmd_prop(pid, cfg, None if pid in (3, 6, 7) else ctx))
    for lid in checks.LEMMA_IDS:
        out.append(checks.cmd_lemma(lid, cfg, ctx))
    for mode in ("upper", "subsets"):
        out.append(checks.cmd_theorem2(mode, cfg, ctx))
    return out


def cmd_report(args) -> int:
    if not args.cert_dir:
        args.cert_dir = str(Path(args.output).with_suffix("")) + "-certs"
    cfg = _cfg(args)
    reports = run_report(cfg)
    lines = [r.to_json() for r in reports]
    for n in range(3, 21):
        lines.append(json.dumps({"check": "bounds", **checks.cmd_bounds(n)}, sort_keys=True))
    Path(args.output).write_text("\n".join(lines) + "\n")
    for rep in reports:
        print(rep.line())
    if any(r.verdict == checks.FAIL for r in reports):
        return EXIT_FAIL
    return EXIT_OK if all(r.acceptable for r in reports) else EXIT_UNKNOWN


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="search-node budget per exact call")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--method", choices=("bnb", "sat"), default="bnb")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--cert-dir", help="write certificates for passing instances here")
    common.add_argument("--json", action="store_true", help="print JSON lines")
    common.add_argument("-v", "--verbose", action="store_true", help="list every instance")

    ap = argparse.ArgumentParser(prog="dlab", description="Chromatic number of disjointness graphs")
    sub = ap.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a point family")
    gsub = gen.add_subparsers(dest="family", required=True)
    g = gsub.add_parser("convex")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("-o", "--output")
    g = gsub.add_parser("dchain")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--l", type=int, required=True)
    g.add_argument("-o", "--output")
    gen.set_defaults(func=cmd_gen)

    s = sub.add_parser("search-x", help="seeded search for the 16-point set X")
    s.add_argument("--seed", type=int, default=12)
    s.add_argument("--budget", type=int, default=200_000, help="hill-climbing steps")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_search_x)

    c = sub.add_parser("chi", parents=[common], help="exact chi(D(P)) of a point file")
    c.add_argument("file")
    c.add_argument("--cnf-out", help="also write the CNF for (chi-1)-colorability")
    c.add_argument("--cert", help="write the chromatic certificate")
    c.set_defaults(func=cmd_chi)

    v = sub.add_parser("verify", help="run one named check")
    vsub = v.add_subparsers(dest="what", required=True)
    p = vsub.add_parser("prop", parents=[common])
    p.add_argument("--id", type=int, required=True, choices=checks.PROP_IDS)
    p = vsub.add_parser("lemma", parents=[common])
    p.add_argument("--id", type=int, required=True, choices=checks.LEMMA_IDS)
    p.add_argument("--sample", type=int, help="instances to sample (0 = whole family)")
    p = vsub.add_parser("theorem2", parents=[common])
    p.add_argument("--mode", required=True, choices=("upper", "subsets", "full"))
    p.add_argument("--count", type=int, help="random sets (upper) or subsets (subsets)")
    p = vsub.add_parser("convex", parents=[common])
    p.add_argument("--max-n", type=int, default=9)
    vsub.add_parser("dchain", parents=[common])
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", help="closed-form bounds on d(n)")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bounds)

    r = sub.add_parser("report", parents=[common], help="run the standard battery")
    r.add_argument("-o", "--output", required=True)
    r.set_defaults(func=cmd_report)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GeometryError, FileNotFoundError, ValueError) as exc:
        print(f"dlab: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""seqfam command-line driver.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from seqfam.experiment import analyze_family, compare_family, verify_range
from seqfam.families import (
    FamilyFormatError,
    Orientation,
    QuadraticFamilyParams,
    build_quadratic_family,
    read_family,
    write_family,
)
from seqfam.measures import BudgetAction, BudgetExceeded, SearchBudget
from seqfam.ntcore import Prime, find_quadratic_nonresidue

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _quadratic_params(p: int, b: int | None, orientation: str) -> QuadraticFamilyParams:
    try:
        prime = Prime(p)
        if b is None:
            b = find_quadratic_nonresidue(prime).value
        return QuadraticFamilyParams(prime, b, Orientation(orientation))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _budget(args) -> SearchBudget:
    action = BudgetAction.PROCEED_WITH_WARNING if args.force else BudgetAction.REJECT
    return SearchBudget(args.budget, action)


def _emit_json(report: dict, path: str | None) -> None:
    if path:
        Path(path).write_text(json.dumps(report, indent=2) + "\n")


def _witness_str(w: dict | None) -> str:
    if w is None:
        return "-"
    return f"M={w['M']} D={tuple(w['D'])} I={tuple(w['I'])}"


def _blocking_str(c: dict | None) -> str:
    if not c or not c["blocking"]:
        return "-"
    b = c["blocking"]
    signs = "".join("+" if s > 0 else "-" for s in b["signs"])
    return f"positions={tuple(b['positions'])} signs={signs}"


def cmd_generate(args) -> int:
    params = _quadratic_params(args.p, args.b, args.orientation)
    fam = build_quadratic_family(params)
    write_family(fam, args.out)
    print(f"F={fam.size} N={fam.length} label={fam.label}")
    return EXIT_OK


def cmd_measure(args) -> int:
    if (args.family_file is None) == (args.p is None):
        raise UsageError("give exactly one of a family file or --p")
    p = b = orientation = None
    if args.family_file is not None:
        try:
            fam = read_family(args.family_file)
        except FamilyFormatError as exc:
            raise UsageError(f"{args.family_file}: {exc}") from None
    else:
        params = _quadratic_params(args.p, args.b, args.orientation)
        fam = build_quadratic_family(params)
        p, b, orientation = int(params.p), params.b, params.orientation.value
    report = analyze_family(
        fam,
        ell_max=args.ell,
        complexity=args.complexity,
        budget=_budget(args),
        threads=args.threads,
        timings=args.timings,
        p=p,
        b=b,
        orientation=orientation,
    )
    _emit_json(report, args.json)
    print(f"family: {fam.label}  F={fam.size} N={fam.length}")
    print(f"{'ell':>4} {'phi':>6}  witness")
    for m in report["measures"]:
        print(f"{m['ell']:>4} {m['value']:>6}  {_witness_str(m['witness'])}")
    if report["complexity"]:
        print(f"complexity C={report['complexity']['value']}  blocking {_blocking_str(report['complexity'])}")
    if report["theorem_bound"]:
        tb = report["theorem_bound"]
        print(f"theorem bound raw={tb['raw']} clamped={tb['clamped']} dual phis={tb['dual_phis']}")
    if report["weil"]:
        w = report["weil"]
        print(f"weil max |sum|={w['max_abs_sum']} limit={w['limit']}")
    if report["ratios"]:
        print("ratios phi/(ell sqrt(p) ln p): " + " ".join(f"{r['ratio']:.4f}" for r in report["ratios"]))
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        report = verify_range(
            args.p_min, args.p_max, args.ell, args.family, _budget(args), args.threads, args.timings
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit_json(report, args.json)
    for row in report["primes"]:
        if row["status"] == "SKIPPED":
            print(f"p={row['p']:>4}  SKIPPED  {row['reason']}")
            continue
        failed = [k for k, ok in row["checks"].items() if not ok]
        if args.family == "quadratic":
            cn = row["orientations"]["by_n"]
            detail = (
                f"C={cn['complexity']['value']} bound={cn['theorem_bound']['clamped']} "
                f"dual_phis={cn['dual_phis']} weil={row['weil']['max_abs_sum']}/{row['weil']['limit']}"
            )
        else:
            detail = f"C={row['complexity']['value']} certificate matches={row['certificate']['matches']}"
        tail = f"  failed: {', '.join(failed)}" if failed else ""
        print(f"p={row['p']:>4}  {row['status']:<4}  {detail}{tail}")
    s = report["summary"]
    print(f"summary: {s['PASS']} passed, {s['FAIL']} failed, {s['SKIPPED']} skipped")
    if s["FAIL"]:
        return EXIT_FAIL
    return EXIT_BUDGET if s["SKIPPED"] else EXIT_OK


def cmd_compare(args) -> int:
    try:
        report = compare_family(
            args.family, args.p, args.ell, _budget(args), d=args.d, k=args.k, limit=args.limit, threads=args.threads
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit_json(report, args.json)
    prm = report["params"]
    print(f"family: {prm['label']}  F={prm['F']} N={prm['N']}")
    print(f"complexity C={report['complexity']['value']}  blocking {_blocking_str(report['complexity'])}")
    for m in report["measures"]:
        print(f"phi_{m['ell']} = {m['value']}  ({_witness_str(m['witness'])})")
    if "certificate" in report:
        c = report["certificate"]
        print(f"C <= 1 certificate: positions={tuple(c['positions'])} signs={tuple(c['signs'])} matched by {c['matches']} members")
    if "shift_pair" in report:
        sp = report["shift_pair"]
        print(
            f"shift pair f={sp['f']} g={sp['g']}: {_witness_str(sp['witness'])} "
            f"|sum|={sp['value']} >= {sp['claimed_lower_bound']}"
        )
    print(f"status: {report['status']}")
    return EXIT_OK if report["status"] == "PASS" else EXIT_FAIL


def _add_search_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--budget", type=int, default=SearchBudget().max_evaluations, help="max evaluations per search")
    sp.add_argument("--force", action="store_true", help="run searches over budget with a warning")
    sp.add_argument("--threads", type=int, default=None, help="worker threads for the correlation search")
    sp.add_argument("--json", metavar="PATH", help="write the JSON report here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="seqfam", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a quadratic Legendre family file")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--b", type=int, default=None, help="quadratic nonresidue (default: smallest)")
    g.add_argument("--orientation", choices=[o.value for o in Orientation], default="by_n")
    g.add_argument("--out", "-o", required=True)
    g.set_defaults(func=cmd_generate)

    m = sub.add_parser("measure", help="measures of a family file or quadratic family")
    m.add_argument("family_file", nargs="?")
    m.add_argument("--p", type=int)
    m.add_argument("--b", type=int)
    m.add_argument("--orientation", choices=[o.value for o in Orientation], default="by_n")
    m.add_argument("--ell", type=int, default=3, help="largest order (default 3)")
    m.add_argument("--complexity", action="store_true", help="also compute family complexity and the theorem bound")
    m.add_argument("--timings", action="store_true", help="record wall-clock per stage (breaks byte-stability)")
    _add_search_flags(m)
    m.set_defaults(func=cmd_measure)

    v = sub.add_parser("verify", help="check the family claims over a prime range")
    v.add_argument("--p-min", type=int, default=11)
    v.add_argument("--p-max", type=int, default=43)
    v.add_argument("--ell", type=int, default=3)
    v.add_argument("--family", choices=["quadratic", "gms2"], default="quadratic")
    v.add_argument("--timings", action="store_true")
    _add_search_flags(v)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("compare", help="complexity and correlation of one family kind")
    c.add_argument("--family", choices=["quadratic", "gms2", "squarefree-shift"], required=True)
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--ell", type=int, default=2)
    c.add_argument("--d", type=int, default=1, help="shift for squarefree-shift")
    c.add_argument("--k", type=int, default=2, help="degree bound for squarefree-shift")
    c.add_argument("--limit", type=int, default=64, help="max square-free polynomials")
    _add_search_flags(c)
    c.set_defaults(func=cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "ell", 1) < 1:
        parser.error("--ell must be at least 1")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"seqfam: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"seqfam: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"seqfam: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    warnings.simplefilter("default")
    sys.exit(main())

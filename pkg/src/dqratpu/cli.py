"""Command line front end.

Exit codes: 0 refutation verified (or command succeeded), 1 proof rejected,
2 proof valid but no empty clause, 3 input/output or format error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import List, Optional

from . import depscheme, genfam, oracle
from .core import Formula, InputError
from .dqratcheck import CheckOptions, Status, check_script
from .prefixorder import OuterSets
from .respsys import LdqConfig, check_dres, check_ldq, translate_dres_to_dqrat
from .textio import (parse_dqdimacs, parse_dqrat, parse_resproof, serialize_dqdimacs,
                     serialize_dqrat, serialize_resproof)

JSON_SCHEMA = 1
EXIT_IO = 3

log = logging.getLogger("dqratpu")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="ascii") as fh:
        return fh.read()


def _formula(args) -> Formula:
    return parse_dqdimacs(_read(args.formula), strict=getattr(args, "strict", False),
                          allow_taut=getattr(args, "allow_taut", False))


def _report(verdict) -> int:
    if verdict.status is Status.REJECTED:
        print(verdict.diagnostic(), file=sys.stderr)
    else:
        print(verdict.status.name)
    return verdict.status.value


def cmd_check(args) -> int:
    f = _formula(args)
    script = parse_dqrat(_read(args.proof))
    opts = CheckOptions(lplr=args.lplr, scheme=args.scheme, strict=args.strict)
    return _report(check_script(f, script, opts))


def cmd_analyze(args) -> int:
    f = _formula(args)
    if args.outer:
        sets = OuterSets(f.prefix).all()
        if args.json:
            print(json.dumps({"schema": JSON_SCHEMA, "outer": {str(v): sorted(s) for v, s in sets.items()}}))
        else:
            for v in f.prefix:
                print(f"{v}: {' '.join(map(str, sorted(sets[v])))}")
        return 0
    pairs = sorted(depscheme.all_pairs(f, args.scheme))
    if args.json:
        print(json.dumps({"schema": JSON_SCHEMA, "scheme": args.scheme, "pairs": [list(p) for p in pairs]}))
    else:
        for u, x in pairs:
            print(f"{u} {x}")
    return 0


def cmd_apply(args) -> int:
    f = _formula(args)
    sys.stdout.write(serialize_dqdimacs(depscheme.apply_scheme(f, args.scheme)))
    return 0


def cmd_checkres(args) -> int:
    f = _formula(args)
    proof = parse_resproof(_read(args.proof))
    if args.system == "dres":
        return _report(check_dres(f, proof))
    if not f.prefix.is_qbf_shaped():
        print("warning: long-distance Q-resolution is not sound for DQBF in general", file=sys.stderr)
    return _report(check_ldq(f, proof, LdqConfig(args.scheme)))


def cmd_translate(args) -> int:
    f = _formula(args)
    script = translate_dres_to_dqrat(f, parse_resproof(_read(args.proof)))
    sys.stdout.write(serialize_dqrat(script))
    return 0


def cmd_gen(args) -> int:
    params = genfam.FamilyParams(args.family, args.n)
    f = genfam.gen_family(params)
    comments = [f"{args.family} N={args.n}"] if args.family != "running_example" else ["running_example"]
    if args.family != "running_example":
        comments += genfam.ParityVars(args.n).legend()
    text = serialize_dqdimacs(f, comments)
    if args.output:
        with open(args.output, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.proof:
        if args.family == "bridged_ts_lqparity":
            proof = genfam.gen_bridged_refutation(args.n)
        elif args.family == "running_example":
            proof = genfam.running_example_proof()
        else:
            print("no proof generator for this family", file=sys.stderr)
            return EXIT_IO
        with open(args.proof, "w", encoding="ascii") as fh:
            fh.write(serialize_resproof(proof))
    return 0


def cmd_oracle(args) -> int:
    if args.oracle_cmd == "eval":
        f = _formula(args)
        value = oracle.eval_dqbf(f, args.budget)
        if args.json:
            print(json.dumps({"schema": JSON_SCHEMA, "true": value}))
        else:
            print("TRUE" if value else "FALSE")
        return 0
    params = oracle.SweepParams(args.universals, args.existentials, args.clauses, args.width)
    progress = (lambda msg: print(msg, file=sys.stderr)) if args.verbose else None
    report = oracle.scheme_soundness_sweep(params, symmetry=not args.no_symmetry, progress=progress)
    if args.json:
        print(json.dumps({"schema": JSON_SCHEMA, **report.summary()}))
    else:
        print("\n".join(report.lines()))
        for v in report.violations:
            print(f"violation {v.kind}: {v.formula!r} {v.detail}")
    return 0 if report.ok else 1


class _Parser(argparse.ArgumentParser):
    # usage errors must not look like "proof valid, no refutation" (2)
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="dqratpu", description="DQBF proof checking toolkit")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to standard error")
    sub = ap.add_subparsers(dest="command", required=True)

    def formula_arg(p, strictness=True):
        p.add_argument("formula", help=".qdimacs/.dqdimacs file, or - for standard input")
        if strictness:
            p.add_argument("--strict", action="store_true", help="refuse undeclared variables")
            p.add_argument("--allow-taut", action="store_true", help="keep tautological input clauses")

    p = sub.add_parser("check", help="replay a .dqrat proof")
    formula_arg(p)
    p.add_argument("proof")
    p.add_argument("--lplr", action="store_true", help="allow local pure literal reduction on u lines")
    p.add_argument("--scheme", choices=("rrs", "pu"), default="pu", help="scheme justifying dependency removals")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("analyze", help="print dependency pairs or outer sets")
    formula_arg(p)
    p.add_argument("--scheme", choices=depscheme.SCHEMES, default="pu")
    p.add_argument("--outer", action="store_true", help="print outer sets instead of pairs")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("apply", help="shrink the prefix to a scheme's pairs")
    formula_arg(p)
    p.add_argument("--scheme", choices=depscheme.SCHEMES, default="pu")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("checkres", help="check an LDQ or IndExt resolution proof")
    formula_arg(p)
    p.add_argument("proof")
    p.add_argument("--system", choices=("ldq", "dres"), default="ldq")
    p.add_argument("--scheme", choices=depscheme.SCHEMES, default="pu")
    p.set_defaults(func=cmd_checkres)

    p = sub.add_parser("translate", help="turn an IndExt resolution proof into .dqrat")
    formula_arg(p)
    p.add_argument("proof")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("gen", help="generate a crafted formula")
    p.add_argument("--family", choices=genfam.FAMILIES, required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("-o", "--output", help="write the formula here instead of standard output")
    p.add_argument("--proof", metavar="PATH", help="also write a .resproof refutation")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="brute-force evaluation and soundness sweeps")
    osub = p.add_subparsers(dest="oracle_cmd", required=True)
    e = osub.add_parser("eval")
    formula_arg(e)
    e.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    e.add_argument("--json", action="store_true")
    s = osub.add_parser("sweep")
    s.add_argument("--universals", type=int, default=1)
    s.add_argument("--existentials", type=int, default=2)
    s.add_argument("--clauses", type=int, default=3)
    s.add_argument("--width", type=int, default=3)
    s.add_argument("--no-symmetry", action="store_true", help="evaluate every clause set, not one per polarity orbit")
    s.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (OSError, InputError, ValueError, UnicodeDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit status: 0 for PASS, 1 for FAIL, 2 for exhausted budgets (argparse
also uses 2 for usage errors, which are rejected before any work).
The empty string is spelled ``@e`` in arguments and output.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional

from . import aowf, keyagree, prober
from .ambiguity import (
    BUILTIN_OPS,
    DEFAULT_CENSUS_BUDGET,
    G_BOUNDS,
    ambiguity_profile,
    census_csv,
    check_h_to_one,
    preimage_census,
    profile_csv,
)
from .errors import BudgetError
from .gconstruct import GMachine
from .strings import format_bitstring, parse_bitstring

EXIT_PASS, EXIT_FAIL, EXIT_BUDGET = 0, 1, 2


class Selection:
    """A resolved ``--op`` selector."""

    def __init__(self, selector: str, budget: int):
        self.selector = selector
        self.machine: Optional[GMachine] = None
        self.sigma: Optional[aowf.SigmaAOWF] = None
        kind, _, arg = selector.partition(":")
        if selector in BUILTIN_OPS:
            self.op = BUILTIN_OPS[selector]
        elif kind == "gfun" and arg in G_BOUNDS:
            self.machine = GMachine(g=G_BOUNDS[arg], pair_budget=budget)
            self.op = self.machine.as_operation()
        elif kind == "aowf" and arg in aowf.RELATIONS:
            self.sigma = aowf.SigmaAOWF(aowf.RELATIONS[arg])
            self.op = self.sigma.as_operation()
        else:
            raise ValueError(f"unknown operation selector {selector!r}")


def _selector(args) -> str:
    sel = args.op
    if sel == "gfun":
        sel = f"gfun:{args.g or 'linear'}"
    elif sel == "aowf":
        sel = f"aowf:{args.relation or 'parity-up'}"
    return sel


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="ascii", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_eval(sel: Selection, args) -> int:
    a, b = parse_bitstring(args.a), parse_bitstring(args.b)
    _emit(format_bitstring(sel.op(a, b)) + "\n", args.out)
    if args.dump_table:
        if sel.machine is None:
            raise ValueError("--dump-table only applies to gfun operations")
        with open(args.dump_table, "w", encoding="ascii", newline="") as fh:
            fh.write(sel.machine.table.dump())
    return EXIT_PASS


def cmd_census(sel: Selection, args) -> int:
    census = preimage_census(sel.op, args.max_rank, args.budget)
    extra = None
    if sel.sigma is not None:
        extra = {img: {"case": img[1:3]} for img in census}
    _emit(census_csv(census, extra), args.out)
    if sel.op.ambiguity_bound is None:
        return EXIT_PASS
    verdict = check_h_to_one(census, sel.op.ambiguity_bound)
    if not verdict.passed:
        print(f"FAIL: {format_bitstring(verdict.counterexample)} has {verdict.count} "
              f"preimages > {verdict.bound}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_PASS


def cmd_profile(sel: Selection, args) -> int:
    _emit(profile_csv(ambiguity_profile(sel.op, args.max_rank, args.budget)), args.out)
    return EXIT_PASS


def cmd_cases(sel: Selection, args) -> int:
    if sel.sigma is None:
        raise ValueError("cases only applies to aowf operations")
    listings = [aowf.case_table_check(sel.sigma, parse_bitstring(y), args.len_cap)
                for y in args.images]
    _emit(aowf.case_table_csv(listings), args.out)
    return EXIT_PASS


def cmd_probe(sel: Selection, args) -> int:
    find = prober.find_witness if args.plain else prober.find_short_witness
    w = find(sel.op, args.k)
    verdict = prober.verify_witness(sel.op, w, args.max_rank, args.budget)
    _emit(w.to_json() + "\n", args.out)
    print(f"{verdict.status} census_count={verdict.census_count}", file=sys.stderr)
    return EXIT_PASS if verdict.passed else EXIT_FAIL


def cmd_bound(sel: Selection, args) -> int:
    params = prober.LengthBoundParams(args.m, args.i)
    report = prober.measure_output_bound(sel.op, params, args.k_max, args.samples, args.seed)
    result = {"bound": report.to_dict()}
    if args.N is not None:
        result["demo"] = prober.lower_bound_demo(sel.op, params, args.N, args.budget).to_dict()
    _emit(json.dumps(result, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_FAIL if report.violations else EXIT_PASS


def cmd_keyagree(sel: Selection, args) -> int:
    if args.secrets:
        if len(args.secrets) != 3:
            raise ValueError("keyagree takes exactly three strings: x y z")
        x, y, z = (parse_bitstring(s) for s in args.secrets)
        sessions = [((x, y, z), keyagree.run_session(sel.op, x, y, z))]
    else:
        sessions = list(keyagree.random_sessions(sel.op, args.sessions, args.seed,
                                                 max_len=args.len_cap))
    lines = []
    ok = True
    for _, res in sessions:
        y, xy, yz = (format_bitstring(s) for s in res.transcript)
        lines.append(f"public={y} alice_sends={xy} bob_sends={yz} "
                     f"alice_key={format_bitstring(res.alice_key)} "
                     f"bob_key={format_bitstring(res.bob_key)}")
        ok &= res.agreed
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_PASS if ok else EXIT_FAIL


COMMANDS = {
    "eval": cmd_eval,
    "census": cmd_census,
    "profile": cmd_profile,
    "cases": cmd_cases,
    "probe": cmd_probe,
    "bound": cmd_bound,
    "keyagree": cmd_keyagree,
}


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--op", required=True,
                        help="concat | max | proj | gfun:<linear|log|sqrt> | aowf:<parity-up|mod3-few>")
    common.add_argument("--g", choices=sorted(G_BOUNDS), help="g for --op gfun")
    common.add_argument("--relation", choices=sorted(aowf.RELATIONS), help="relation for --op aowf")
    common.add_argument("--max-rank", type=_nonneg,
                        help="rank box (default 30; 254 for probe)")
    common.add_argument("--len-cap", type=_nonneg, default=6)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=_positive, default=DEFAULT_CENSUS_BUDGET)
    common.add_argument("--out")

    p = argparse.ArgumentParser(prog="assocamb", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate op(a, b)")
    e.add_argument("a")
    e.add_argument("b")
    e.add_argument("--dump-table", help="write the gfun table to this path")

    sub.add_parser("census", parents=[common], help="preimage census CSV")
    sub.add_parser("profile", parents=[common], help="max preimage count per output length")

    c = sub.add_parser("cases", parents=[common], help="classify aowf preimages by case")
    c.add_argument("images", nargs="+")

    pr = sub.add_parser("probe", parents=[common], help="find and verify an ambiguity witness")
    pr.add_argument("--k", type=_nonneg, default=3)
    pr.add_argument("--plain", action="store_true", help="use the unconstrained search")

    b = sub.add_parser("bound", parents=[common], help="output-length bound and lower-bound demo")
    b.add_argument("--m", type=_nonneg, default=1)
    b.add_argument("--i", type=_positive, default=2)
    b.add_argument("--k-max", type=int, default=16)
    b.add_argument("--samples", type=_nonneg, default=10_000)
    b.add_argument("--N", type=_nonneg)

    k = sub.add_parser("keyagree", parents=[common], help="run key agreement sessions")
    k.add_argument("secrets", nargs="*", help="x y z")
    k.add_argument("--sessions", type=_positive, default=1)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_rank is None:
        args.max_rank = 254 if args.command == "probe" else 30
    try:
        sel = Selection(_selector(args), args.budget)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        return COMMANDS[args.command](sel, args)
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())

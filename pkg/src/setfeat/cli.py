"""Command-line front end.

    setfeat check FILE            CONSISTENT (exit 0) or INCONSISTENT clash=N var=x (exit 1)
    setfeat model FILE [-o OUT]   verdict, then the JSON model of a consistent term
    setfeat trace FILE            rule applications, then the verdict
    setfeat translate-fol FILE    first-order clauses in a TPTP-like listing
    setfeat sat-encode [PHI]      the term encoding a propositional formula

Bad input or usage exits with 2, an exhausted step budget with 3.
A FILE holding ``name = term.`` clauses is a corpus: ``check`` and
``trace`` report every clause, the other commands need ``--clause``
unless the corpus has a single clause.
"""

from __future__ import annotations

import argparse
import sys

from . import fol, satbridge
from .solver import SolverConfig, StepBudgetExceeded, default_root, dump_result, solve
from .syntax import ParseError, load, render
from .terms import Term, desugar

EXIT_OK, EXIT_INCONSISTENT, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _config(args) -> SolverConfig:
    return SolverConfig(max_steps=args.max_steps, seed=args.seed, trace=args.trace)


def _clauses(args) -> list[tuple[str | None, Term]]:
    data = load(args.file)
    if not isinstance(data, dict):
        return [(None, data)]
    if args.clause is not None:
        if args.clause not in data:
            raise UsageError(f"no clause named {args.clause!r} in {args.file}")
        return [(args.clause, data[args.clause])]
    return list(data.items())


def _single(args) -> Term:
    items = _clauses(args)
    if len(items) != 1:
        raise UsageError(f"{args.file} holds {len(items)} clauses; pick one with --clause")
    return items[0][1]


def _emit(text: str, path: str | None, out) -> None:
    if path is None:
        out.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_check(args, out) -> int:
    status = EXIT_OK
    for name, term in _clauses(args):
        result = solve(term, root=args.root, config=_config(args))
        line = dump_result(result)
        out.write(line + "\n" if name is None else f"{name}: {line}\n")
        if args.trace:
            for step in result.trace:
                out.write(f"  {step}\n")
        if not result.consistent:
            status = EXIT_INCONSISTENT
    return status


def _cmd_trace(args, out) -> int:
    status = EXIT_OK
    config = SolverConfig(max_steps=args.max_steps, seed=args.seed, trace=True)
    for name, term in _clauses(args):
        result = solve(term, root=args.root, config=config)
        if name is not None:
            out.write(f"% {name}\n")
        for step in result.trace:
            out.write(step + "\n")
        out.write(dump_result(result) + "\n")
        if not result.consistent:
            status = EXIT_INCONSISTENT
    return status


def _cmd_model(args, out) -> int:
    result = solve(_single(args), root=args.root, config=_config(args))
    out.write(dump_result(result) + "\n")
    if not result.consistent:
        return EXIT_INCONSISTENT
    _emit(result.model.dumps(), args.output, out)
    return EXIT_OK


def _cmd_translate(args, out) -> int:
    term = desugar(_single(args))
    root = args.root if args.root is not None else default_root(term)
    _emit(fol.to_text(fol.translate(root, term)), args.output, out)
    return EXIT_OK


def _cmd_sat_encode(args, out) -> int:
    if (args.formula is None) == (args.dimacs is None):
        raise UsageError("give either a formula or --dimacs FILE")
    if args.dimacs is not None:
        with open(args.dimacs, encoding="utf-8") as fh:
            phi = satbridge.read_dimacs(fh.read())
    else:
        phi = satbridge.parse_prop(args.formula)
    enc = satbridge.encode(phi, scheme=args.scheme)
    if not args.check:
        out.write(render(enc.term) + "\n")
        return EXIT_OK
    result = solve(enc.term, config=_config(args))
    sat = satbridge.truth_table_sat(phi)
    agree = result.consistent == sat
    verdict = "CONSISTENT" if result.consistent else "INCONSISTENT"
    out.write(f"solver={verdict} sat={'TRUE' if sat else 'FALSE'} {'AGREE' if agree else 'DISAGREE'}\n")
    return EXIT_OK if agree else EXIT_INCONSISTENT


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-steps", type=int, default=10**6, help="rule application budget")
    common.add_argument("--seed", type=int, default=None, help="randomise branch order")
    common.add_argument("--trace", action="store_true", help="record rule applications")
    common.add_argument("--root", default=None, help="root variable (default: x)")

    file_args = argparse.ArgumentParser(add_help=False)
    file_args.add_argument("file")
    file_args.add_argument("--clause", default=None, help="clause of a corpus file")

    parser = argparse.ArgumentParser(prog="setfeat", description="Consistency checking for feature terms with sets.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", parents=[common, file_args], help="decide consistency")
    p.set_defaults(run=_cmd_check)
    p = sub.add_parser("trace", parents=[common, file_args], help="print the rule-application trace")
    p.set_defaults(run=_cmd_trace)
    p = sub.add_parser("model", parents=[common, file_args], help="write a model as JSON")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(run=_cmd_model)
    p = sub.add_parser("translate-fol", parents=[common, file_args], help="first-order translation")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--format", choices=["tptp-like"], default="tptp-like")
    p.set_defaults(run=_cmd_translate)
    p = sub.add_parser("sat-encode", parents=[common], help="encode a propositional formula")
    p.add_argument("formula", nargs="?")
    p.add_argument("--dimacs", default=None, help="read a CNF in DIMACS format")
    p.add_argument("--check", action="store_true", help="compare the solver with a truth table")
    p.add_argument("--scheme", choices=["gate", "direct"], default="gate")
    p.set_defaults(run=_cmd_sat_encode)
    return parser


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.max_steps < 1:
            raise UsageError("--max-steps must be positive")
        return args.run(args, out)
    except StepBudgetExceeded as exc:
        err.write(f"setfeat: undecided: {exc}\n")
        return EXIT_BUDGET
    except (ParseError, satbridge.PropParseError, UsageError, OSError, ValueError) as exc:
        err.write(f"setfeat: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

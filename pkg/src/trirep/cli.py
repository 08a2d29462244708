"""Command-line interface.

Exit codes: 0 ok, 1 verification failed, 2 usage or parse error,
3 inconclusive, 4 not solvable, 5 parametric law in solve, 6 size mismatch.
"""

from __future__ import annotations

import argparse
import difflib
import sys
import time
from pathlib import Path

from .algebra import NotSolvable, jacobi_check
from .catalog import FAMILIES, get_entry, known_errata, load_catalog, verify_all
from .formats import ParseError, format_algebra, format_rep, parse_algebra_file, parse_rep_file, parse_scalar
from .polynomials import GroebnerCaps, param
from .representation import SizeMismatch, verify_representation
from .solver import (
    Infeasible, NotFound, ParametricLaw, Solution, SolutionsMayExist,
    naturalize, solve_min_rep,
)
from .triangular import derived_series_dims_h, law_h

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3
EXIT_NOT_SOLVABLE = 4
EXIT_PARAMETRIC = 5
EXIT_SIZE = 6


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_hn(args):
    if args.series:
        print(" ".join(map(str, derived_series_dims_h(args.n))))
        return EXIT_OK
    for i, j, row in law_h(args.n).brackets():
        rhs = " + ".join(f"x{k}" if c == 1 else f"{c}*x{k}" for k, c in row.items())
        print(f"[x{i},x{j}]={rhs}")
    return EXIT_OK


def _substitutions(pairs):
    values = {}
    for item in pairs or ():
        name, eq, text = item.partition("=")
        if not eq:
            raise ParseError(f"--set expects name=value, got {item!r}")
        values[param(name.strip())] = parse_scalar(text)
    return values


def _describe_outcome(k, outcome):
    if isinstance(outcome, Infeasible):
        return f"k={k}: infeasible (certified, {len(outcome.certificate)} minors)"
    if isinstance(outcome, Solution):
        return f"k={k}: solution"
    if isinstance(outcome, NotFound):
        return f"k={k}: no solution on the candidate ladder ({outcome.nodes} nodes)"
    if isinstance(outcome, SolutionsMayExist):
        return f"k={k}: solutions may exist"
    return f"k={k}: inconclusive ({outcome.reason})"


def cmd_solve(args):
    A = parse_algebra_file(_read(args.algebra))
    subs = _substitutions(args.set)
    if subs:
        A = A.substitute(subs)
    bad = jacobi_check(A)
    if bad:
        print(f"error: Jacobi identity fails at {bad}", file=sys.stderr)
        return EXIT_USAGE
    caps = GroebnerCaps(max_pairs=args.gb_pairs, max_degree=args.gb_degree)
    deadline = time.monotonic() + args.timeout if args.timeout else None
    try:
        result = solve_min_rep(A, max_k=args.max_k, budget=args.budget, caps=caps,
                               jobs=args.jobs, deadline=deadline)
    except NotSolvable as exc:
        print(f"error: not solvable: {exc}", file=sys.stderr)
        return EXIT_NOT_SOLVABLE
    except ParametricLaw:
        print("error: the law has parameters; give values with --set name=value",
              file=sys.stderr)
        return EXIT_PARAMETRIC
    print(f"lower bound: {result.lower_bound}")
    for k, outcome in result.audit:
        print(_describe_outcome(k, outcome))
    if result.k is None:
        print(f"mu: inconclusive ({result.outcome.reason})")
        return EXIT_INCONCLUSIVE
    rep = naturalize(A, result.outcome.representation)
    print(f"mu: {result.k} ({result.status})")
    text = format_rep(rep)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"representation written to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args):
    A = parse_algebra_file(_read(args.algebra))
    R = parse_rep_file(_read(args.rep))
    try:
        defects = verify_representation(A, R)
    except SizeMismatch as exc:
        print(f"size mismatch: {exc}")
        return EXIT_SIZE
    bad = jacobi_check(A)
    if bad:
        print(f"warning: Jacobi identity fails at {bad}")
    if not defects:
        print("Valid")
        return EXIT_OK
    for d in defects:
        print(d.describe())
    return EXIT_FAILED


def cmd_catalog(args):
    if args.action == "list":
        for e in load_catalog():
            print(f"{e.id}\tdim={e.dim}\tmu={e.claimed_mu}\t{e.source}")
        return EXIT_OK
    if args.action == "show":
        if not args.id:
            print("error: catalog show needs an entry id", file=sys.stderr)
            return EXIT_USAGE
        try:
            e = get_entry(args.id)
        except KeyError:
            print(f"error: unknown catalog id {args.id!r}", file=sys.stderr)
            return EXIT_USAGE
        print(f"# {e.id} ({e.source}), claimed mu = {e.claimed_mu}")
        if e.constraints:
            print("# constraints: " + "; ".join(e.constraints))
        if e.note:
            print(f"# note: {e.note}")
        sys.stdout.write(format_algebra(e.law))
        sys.stdout.write(format_rep(e.rep))
        print(f"mu={e.claimed_mu}")
        return EXIT_OK
    report = verify_all(args.samples, args.seed, jobs=args.jobs)
    _emit(report.render(), args.out)
    expected = known_errata()
    actual = report.errata_text()
    if actual == expected:
        print("errata: matches the committed known-errata file")
        return EXIT_OK
    print("errata: differs from the committed known-errata file")
    sys.stdout.writelines(difflib.unified_diff(
        expected.splitlines(True), actual.splitlines(True), "known_errata.txt", "computed"))
    return EXIT_FAILED


def cmd_family(args):
    try:
        A, R = FAMILIES[args.name](args.n)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    stem = f"{args.name}_{args.n}"
    law_path, rep_path = out / f"{stem}.alg", out / f"{stem}.rep"
    law_path.write_text(format_algebra(A), encoding="utf-8")
    rep_path.write_text(format_rep(R), encoding="utf-8")
    # re-read what was written so the check covers the file format too
    defects = verify_representation(parse_algebra_file(law_path.read_text(encoding="utf-8")),
                                    parse_rep_file(rep_path.read_text(encoding="utf-8")))
    print(f"wrote {law_path} and {rep_path} (size {R.k})")
    if defects:
        for d in defects:
            print(d.describe())
        return EXIT_FAILED
    print("Valid")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="trirep", description="Minimal upper-triangular representations "
                "of solvable Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    hn = sub.add_parser("hn", help="law or derived series of h_n")
    hn.add_argument("n", type=_positive)
    mode = hn.add_mutually_exclusive_group(required=True)
    mode.add_argument("--law", action="store_true")
    mode.add_argument("--series", action="store_true")
    hn.set_defaults(func=cmd_hn)

    solve = sub.add_parser("solve", help="compute a minimal representation")
    solve.add_argument("algebra")
    solve.add_argument("--max-k", type=_positive, default=None)
    solve.add_argument("--budget", type=_positive, default=200_000, help="search nodes per size")
    solve.add_argument("--gb-pairs", type=_positive, default=200_000)
    solve.add_argument("--gb-degree", type=_positive, default=12)
    solve.add_argument("--jobs", type=_positive, default=1)
    solve.add_argument("--timeout", type=_positive, default=None, help="seconds")
    solve.add_argument("--set", action="append", metavar="NAME=VALUE",
                       help="value for a law parameter")
    solve.add_argument("--out")
    solve.set_defaults(func=cmd_solve)

    verify = sub.add_parser("verify", help="check a representation against a law")
    verify.add_argument("algebra")
    verify.add_argument("rep")
    verify.set_defaults(func=cmd_verify)

    cat = sub.add_parser("catalog", help="inspect or verify the bundled catalog")
    cat.add_argument("action", choices=("list", "show", "verify-all"))
    cat.add_argument("id", nargs="?")
    cat.add_argument("--seed", type=int, default=0)
    cat.add_argument("--samples", type=int, default=2)
    cat.add_argument("--jobs", type=_positive, default=1)
    cat.add_argument("--out")
    cat.set_defaults(func=cmd_catalog)

    fam = sub.add_parser("family", help="write a family member and its representative")
    fam.add_argument("name", choices=sorted(FAMILIES))
    fam.add_argument("n", type=int)
    fam.add_argument("--out")
    fam.set_defaults(func=cmd_family)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

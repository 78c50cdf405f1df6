"""Command line driver.

Exit codes: 0 success, 1 usage, 2 parse, 3 mathematical domain error,
4 law failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib.resources import files
from pathlib import Path

from .blackbox import InconsistentFixing, black_box, linear_solution_set, solve_steady_states
from .cospan import ApexTooLarge, FootMismatch
from .decor import FunctorMismatch
from .dsl import DslError, format_network, parse
from .dynam import mass_action, open_network_to_morphism
from .finset import FinSetError
from .sarel import (
    BP,
    NATIVE,
    BoundaryMismatch,
    ConstraintRelation,
    DimensionMismatch,
    NotLinear,
    to_convention,
)
from .solver import NoConvergence

EXIT_USAGE, EXIT_PARSE, EXIT_MATH, EXIT_LAW = 1, 2, 3, 4

MATH_ERRORS = (NotLinear, InconsistentFixing, NoConvergence, BoundaryMismatch, DimensionMismatch,
               FinSetError, FootMismatch, ApexTooLarge, FunctorMismatch, ZeroDivisionError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_text(path: str) -> str:
    p = Path(path)
    if p.exists():
        return p.read_text()
    bundled = files("decorel").joinpath("data", p.name)
    if bundled.is_file():
        return bundled.read_text()
    raise UsageError(f"no such file: {path}")


def _load_network(path: str, name: str | None):
    doc = parse(_read_text(path))
    if name is None:
        names = doc.names()
        if not names:
            raise UsageError(f"{path} defines no networks")
        name = "main" if "main" in names else names[-1]
    try:
        return doc.evaluate(name)
    except KeyError:
        raise UsageError(f"{path} defines no network {name!r}; known: {', '.join(doc.names())}") from None


def _value(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else str(x)
    if isinstance(x, int):
        return str(x)
    return float(x)


def _parse_pairs(items: list[str] | None) -> dict[str, Fraction]:
    out = {}
    for item in items or []:
        key, sep, val = item.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"expected name=value, got {item!r}")
        try:
            out[key.strip()] = Fraction(val.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"not a rational number: {val!r}") from None
    return out


def cmd_compose(args) -> int:
    onet = _load_network(args.file, args.name)
    v = mass_action(onet.network)
    label = args.name or "main"
    if args.out == "json":
        names = onet.network.species.names()
        print(json.dumps({
            "species": list(names),
            "inputs": {lab: names[t] for lab, t in zip(onet.inputs.dom.names(), onet.inputs.table)},
            "outputs": {lab: names[t] for lab, t in zip(onet.outputs.dom.names(), onet.outputs.table)},
            "field": {names[k]: p.to_json() for k, p in enumerate(v.components)},
        }, indent=2))
    else:
        print(format_network(label, onet))
        print(v.format())
    return 0


def cmd_blackbox(args) -> int:
    onet = _load_network(args.file, args.name)
    r = to_convention(black_box(open_network_to_morphism(onet)), args.convention)
    print(r.dumps() if args.out == "json" else r.format())
    return 0


def cmd_solve(args) -> int:
    try:
        r = ConstraintRelation.loads(_read_text(args.relation))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise DslError(f"malformed relation file: {exc}") from None
    fixed = _parse_pairs(args.fix)
    try:
        if r.linear and not r.inequalities:
            sol = linear_solution_set(r, fixed)
            points, dirs, exact = [sol.point], sol.directions, True
        else:
            seeds = [_parse_pairs(args.seed_point)] if args.seed_point else None
            points = solve_steady_states(r, fixed, seeds, starts=args.starts, seed=args.rng_seed)
            dirs, exact = [], False
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    names = r.variable_names()
    conc = r.concentration_indices()
    print(json.dumps({
        "exact": exact,
        "points": [dict(zip(names, map(_value, w.values))) for w in points],
        "nonnegative": [all(w.values[j] >= 0 for j in conc) for w in points],
        "directions": [dict(zip(names, map(_value, d))) for d in dirs],
    }, indent=2))
    return 0


def cmd_check_laws(args) -> int:
    from .laws import run_law_suite

    results = run_law_suite(args.size, args.seed, args.cases)
    for res in results:
        if args.verbose or not res.passed:
            print(res)
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} law checks passed")
    return EXIT_LAW if failed else 0


def cmd_selftest(args) -> int:
    from .acceptance import run_all

    results = run_all(args.only)
    for res in results:
        print(res)
    return EXIT_LAW if any(not r.passed for r in results) else 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="decorel", description="Open reaction networks, decorated corelations and black boxes.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compose", help="evaluate a network or composition and dump its vector field")
    c.add_argument("file")
    c.add_argument("name", nargs="?", help="network to evaluate (default: main, else the last one)")
    c.add_argument("--out", choices=["text", "json"], default="text")
    c.set_defaults(run=cmd_compose)

    b = sub.add_parser("blackbox", help="steady-state relation of a network")
    b.add_argument("file")
    b.add_argument("name", nargs="?", help="network to evaluate (default: main, else the last one)")
    b.add_argument("--convention", choices=[NATIVE, BP], default=NATIVE)
    b.add_argument("--out", choices=["json", "text"], default="json")
    b.set_defaults(run=cmd_blackbox)

    s = sub.add_parser("solve", help="points of a relation with some variables fixed")
    s.add_argument("relation")
    s.add_argument("--fix", action="append", metavar="NAME=VALUE")
    s.add_argument("--seed-point", action="append", metavar="NAME=VALUE",
                   help="starting values for Newton (unlisted variables start at 1)")
    s.add_argument("--starts", type=int, default=8, help="random starts when no seed point is given")
    s.add_argument("--rng-seed", type=int, default=0)
    s.set_defaults(run=cmd_solve)

    law = sub.add_parser("check-laws", help="hypergraph-category law harness")
    law.add_argument("--size", type=int, default=2)
    law.add_argument("--seed", type=int, default=0)
    law.add_argument("--cases", type=int, default=40)
    law.add_argument("-v", "--verbose", action="store_true")
    law.set_defaults(run=cmd_check_laws)

    st = sub.add_parser("selftest", help="run the acceptance criteria")
    st.add_argument("--only", type=int, action="append", metavar="N")
    st.set_defaults(run=cmd_selftest)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except UsageError as exc:
        print(f"decorel: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DslError as exc:
        print(f"decorel: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except MATH_ERRORS as exc:
        print(f"decorel: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())

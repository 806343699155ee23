"""Command line front end.

    superlink table --algebra gl:2,2 --family vector [--out FILE]
    superlink xi    --algebra gl:2,2 --family vector -k 3 [--format text|json]
    superlink link  --algebra osp:2 --family vector --exponents 3,-1,2
    superlink check [--suite markov|recurrence|oracle|dimension|all]
    superlink eval  --expr-file F --q 3/2 --alpha 7/2 --digits 30

Exit status: 0 on success, 1 on a domain error (or a failed check), 2 on
a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import mpmath

from . import __version__
from .decomp import builtin_table, load_table, table_to_json
from .engine import BraidSpec, link_polynomial, xi_k
from .errors import DomainError, SchemaError
from .exact import RatFunc, rf_eval
from .suites import SUITES, run_suites
from .superalg import parse_algebra


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: usage error: {message}\n")
        raise SystemExit(2)


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational p/q, got {text!r}") from None


def _exponents(text):
    try:
        ks = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None
    if not ks:
        raise argparse.ArgumentTypeError("at least one exponent is needed")
    return ks


def build_parser():
    p = _Parser(prog="superlink", description="Two-variable link polynomials from type-I quantum superalgebras.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def table_args(sp):
        sp.add_argument("--algebra", default="gl:2,2", help="gl:m,n or osp:n (default gl:2,2)")
        sp.add_argument("--family", default="vector", choices=("vector", "adjoint"))
        sp.add_argument("--table", metavar="FILE", help="read a decomposition table JSON instead of a built-in one")

    def fmt_args(sp):
        sp.add_argument("--format", default="text", choices=("text", "json"))
        sp.add_argument("--out", metavar="FILE", help="write to FILE instead of stdout")

    sp = sub.add_parser("table", help="emit a decomposition table as JSON")
    table_args(sp)
    sp.add_argument("--out", metavar="FILE")

    sp = sub.add_parser("xi", help="Casimir eigenvalue xi_k(q, alpha)")
    table_args(sp)
    sp.add_argument("-k", type=int, required=True)
    fmt_args(sp)

    sp = sub.add_parser("link", help="link polynomial of the closed braid with the given exponents")
    table_args(sp)
    sp.add_argument("--exponents", type=_exponents, required=True, help="k_1,...,k_{M-1}")
    fmt_args(sp)

    sp = sub.add_parser("check", help="run the invariant suites")
    sp.add_argument("--suite", default="all", choices=SUITES + ("all",))
    sp.add_argument("--workers", type=int, default=1)
    fmt_args(sp)

    sp = sub.add_parser("eval", help="evaluate a serialized rational function")
    sp.add_argument("--expr-file", required=True, metavar="FILE")
    sp.add_argument("--q", type=_fraction, required=True)
    sp.add_argument("--alpha", type=_fraction, default=Fraction(0))
    sp.add_argument("--digits", type=int, default=30)
    sp.add_argument("--out", metavar="FILE")
    return p


def _table(args):
    if args.table:
        return load_table(args.table, require_typical=False)
    return builtin_table(parse_algebra(args.algebra), args.family)


def _emit(text, out):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _render(value: RatFunc, fmt, meta):
    if fmt == "json":
        return json.dumps(dict(meta, value=value.to_json()), indent=2) + "\n"
    return value.to_text() + "\n"


def _read_expr(path):
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"{path}: {exc}") from exc
    if isinstance(obj, dict) and "value" in obj:
        obj = obj["value"]
    if not isinstance(obj, dict) or "num" not in obj or "den" not in obj:
        raise SchemaError(f"{path}: expected an object with 'num' and 'den'")
    try:
        return RatFunc.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"{path}: {exc}") from exc


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "table":
            _emit(json.dumps(table_to_json(_table(args)), indent=2) + "\n", args.out)
        elif args.command == "xi":
            table = _table(args)
            meta = {"algebra": args.algebra, "family": table.family, "k": args.k}
            _emit(_render(xi_k(table, args.k), args.format, meta), args.out)
        elif args.command == "link":
            table = _table(args)
            braid = BraidSpec(args.exponents)
            meta = {"algebra": args.algebra, "family": table.family, "exponents": list(braid.exponents), "M": braid.M}
            _emit(_render(link_polynomial(table, braid), args.format, meta), args.out)
        elif args.command == "check":
            names = SUITES if args.suite == "all" else (args.suite,)
            results = run_suites(names, args.workers)
            if args.format == "json":
                text = json.dumps([r.to_json() for r in results], indent=2) + "\n"
            else:
                passed = sum(r.passed for r in results)
                text = "".join(r.line() + "\n" for r in results) + f"{passed}/{len(results)} checks passed\n"
            _emit(text, args.out)
            return 0 if all(r.passed for r in results) else 1
        elif args.command == "eval":
            value = rf_eval(_read_expr(args.expr_file), args.q, args.alpha, args.digits)
            _emit(mpmath.nstr(value, args.digits) + "\n", args.out)
    except DomainError as exc:
        sys.stderr.write(f"error: {exc.name}: {exc}\n")
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line surface: product, table, validate, bench.

Exit codes are a stable scripting contract: 0 success, 1 usage/parse error,
2 validation failure, 3 engine mismatch.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Tuple

from . import closedform, table
from .algebra import (LieAlgebraError, LieAlgebraSpec, UnknownAlgebraError,
                      builtin, lower_central_series, spec_from_json, validate)
from .oracle import oracle_product, straighten_word
from .poly import Poly

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_MISMATCH = 3


# -- expression parsing --------------------------------------------------

@dataclass(frozen=True)
class ExprTerm:
    coeff: Fraction
    factors: Tuple[Tuple[int, int], ...]  # (generator, exponent) in written order


ExprAst = Tuple[ExprTerm, ...]


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, char: str) -> bool:
        if self.peek() == char:
            self.pos += 1
            return True
        return False

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ExprSyntaxError("expected integer", start)
        return int(self.text[start:self.pos])


def parse_expr(text: str, dim: int) -> ExprAst:
    """Parse ``term (('+'|'-') term)*`` with term ``[rational '*']? factor+``.

    Factors are ``xN`` or ``xN^E`` and multiply left-to-right noncommutatively;
    a bare rational is accepted as a constant term so printed units reparse.
    """
    scanner = _Scanner(text)
    terms: List[ExprTerm] = []
    first = True
    while True:
        scanner.skip_ws()
        if scanner.pos >= len(scanner.text):
            if first:
                raise ExprSyntaxError("empty expression", scanner.pos)
            break
        sign = 1
        if not first:
            if scanner.take("+"):
                pass
            elif scanner.take("-"):
                sign = -1
            else:
                raise ExprSyntaxError("expected '+' or '-'", scanner.pos)
        elif scanner.take("-"):
            sign = -1
        terms.append(_parse_term(scanner, dim, sign))
        first = False
    return tuple(terms)


def _parse_term(scanner: _Scanner, dim: int, sign: int) -> ExprTerm:
    coeff = Fraction(sign)
    char = scanner.peek()
    has_coeff = char.isdigit()
    if has_coeff:
        num = scanner.integer()
        den = 1
        if scanner.take("/"):
            den = scanner.integer()
            if den == 0:
                raise ExprSyntaxError("zero denominator", scanner.pos)
        coeff *= Fraction(num, den)
        if not scanner.take("*"):
            return ExprTerm(coeff, ())
    factors: List[Tuple[int, int]] = []
    while True:
        if scanner.peek() != "x":
            break
        start = scanner.pos
        scanner.pos += 1
        gen = scanner.integer()
        if not 1 <= gen <= dim:
            raise ExprSyntaxError(f"generator x{gen} out of range 1..{dim}", start)
        exp = 1
        if scanner.take("^"):
            exp = scanner.integer()
        factors.append((gen, exp))
        scanner.take("*")  # optional between factors
    if not factors:
        raise ExprSyntaxError("expected a factor", scanner.pos)
    return ExprTerm(coeff, tuple(factors))


def format_expr(ast: ExprAst) -> str:
    pieces = []
    for pos, term in enumerate(ast):
        mag = abs(term.coeff)
        body = "*".join(
            f"x{gen}" if exp == 1 else f"x{gen}^{exp}" for gen, exp in term.factors)
        if not term.factors:
            chunk = str(mag)
        elif mag == 1:
            chunk = body
        else:
            chunk = f"{mag}*{body}"
        if pos == 0:
            pieces.append(chunk if term.coeff >= 0 else f"-{chunk}")
        else:
            pieces.append(("+ " if term.coeff >= 0 else "- ") + chunk)
    return " ".join(pieces) if pieces else "0"


def expr_to_pbw(spec: LieAlgebraSpec, ast: ExprAst) -> Poly:
    """Normalize a parsed expression to PBW form via the rewriting oracle."""
    acc = Poly.zero(spec.dim)
    for term in ast:
        word: List[int] = []
        for gen, exp in term.factors:
            word.extend([gen] * exp)
        acc = acc + straighten_word(spec, word).scale(term.coeff)
    return acc


# -- engines over polynomials -------------------------------------------

def _bilinear_product(left: Poly, right: Poly, engine_fn) -> Poly:
    acc = Poly.zero(left.dim)
    for ml, cl in left.terms.items():
        for mr, cr in right.terms.items():
            acc = acc + engine_fn(ml, mr).scale(cl * cr)
    return acc


# -- commands -----------------------------------------------------------

class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _load_algebra(name: str) -> Tuple[LieAlgebraSpec, Optional[str]]:
    """Resolve an algebra argument: catalog id or path to a spec JSON file."""
    try:
        spec = builtin(name)
        closed_id = name if name in closedform.ALGEBRA_IDS else None
        return spec, closed_id
    except UnknownAlgebraError:
        pass
    path = Path(name)
    if path.exists():
        return spec_from_json(path.read_text()), None
    raise _UsageError(f"unknown algebra id and no such file: {name!r}")


def _cmd_product(args) -> int:
    spec, closed_id = _load_algebra(args.algebra)
    if args.engine in ("closed", "both") and closed_id is None:
        raise _UsageError(
            f"engine {args.engine!r} requires a catalog algebra, got {args.algebra!r}")
    try:
        left = expr_to_pbw(spec, parse_expr(args.left, spec.dim))
        right = expr_to_pbw(spec, parse_expr(args.right, spec.dim))
    except ExprSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    results = {}
    if args.engine in ("closed", "both"):
        results["closed"] = _bilinear_product(
            left, right, lambda ml, mr: closedform.product(closed_id, ml, mr))
    if args.engine in ("oracle", "both"):
        results["oracle"] = _bilinear_product(
            left, right, lambda ml, mr: oracle_product(spec, ml, mr))

    shown = results.get("closed", results.get("oracle"))
    print(shown)
    if args.engine == "both":
        if results["closed"] == results["oracle"]:
            print("verdict: MATCH")
        else:
            print("verdict: MISMATCH")
            print(f"oracle: {results['oracle']}", file=sys.stderr)
            return EXIT_MISMATCH
    return EXIT_OK


def _cmd_table(args) -> int:
    target: object = args.algebra
    if args.algebra not in closedform.ALGEBRA_IDS and not args.algebra.startswith("abelian_"):
        spec, _ = _load_algebra(args.algebra)
        target = spec
    try:
        manifest, records = table.generate_table(target, args.max_degree, args.engine)
    except table.TableMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    data = table.export(manifest, records, args.format)
    if args.out == "-":
        sys.stdout.buffer.write(data)
    else:
        Path(args.out).write_bytes(data)
    return EXIT_OK


def _cmd_validate(args) -> int:
    spec = spec_from_json(Path(args.spec).read_text())
    report = validate(spec)
    print(f"algebra: {spec.name} (dim {spec.dim})")
    print(f"valid: {report.ok}")
    if not report.ok:
        print(report.describe())
        return EXIT_VALIDATION
    profile = lower_central_series(spec)
    print(f"lower central series dims: {profile.series_dims}")
    print(f"nilpotent: {profile.nilpotent}"
          + (f" (class {profile.nilpotency_class})" if profile.nilpotent else ""))
    return EXIT_OK


def _cmd_bench(args) -> int:
    spec, closed_id = _load_algebra(args.algebra)
    if closed_id is None:
        raise _UsageError("bench requires a catalog algebra id")
    monos = table.monomials_upto(spec.dim, args.max_degree)
    pairs = [(l, r) for l in monos for r in monos]

    def best_of(fn, repeats=3):
        times = []
        for _ in range(repeats):
            start = time.perf_counter()
            for l, r in pairs:
                fn(l, r)
            times.append(time.perf_counter() - start)
        return min(times)

    closed_secs = best_of(lambda l, r: closedform.product(closed_id, l, r))
    oracle_secs = best_of(lambda l, r: oracle_product(spec, l, r))

    speedup = oracle_secs / closed_secs if closed_secs else float("inf")
    print(f"pairs: {len(pairs)}")
    print(f"closed_form: {closed_secs:.4f}s")
    print(f"oracle: {oracle_secs:.4f}s")
    print(f"speedup: {speedup:.1f}x")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nilpbw",
                     description="Exact products in enveloping algebras of "
                                 "low-dimensional nilpotent Lie algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    p_product = sub.add_parser("product", help="multiply two expressions")
    p_product.add_argument("--algebra", required=True)
    p_product.add_argument("--left", required=True)
    p_product.add_argument("--right", required=True)
    p_product.add_argument("--engine", choices=("closed", "oracle", "both"),
                           default="both")
    p_product.set_defaults(func=_cmd_product)

    p_table = sub.add_parser("table", help="emit a structure-constant table")
    p_table.add_argument("--algebra", required=True)
    p_table.add_argument("--max-degree", type=int, required=True)
    p_table.add_argument("--engine", choices=table.ENGINES, default="cross_checked")
    p_table.add_argument("--format", choices=("json", "csv"), default="json")
    p_table.add_argument("--out", default="-")
    p_table.set_defaults(func=_cmd_table)

    p_validate = sub.add_parser("validate", help="validate an algebra spec file")
    p_validate.add_argument("--spec", required=True)
    p_validate.set_defaults(func=_cmd_validate)

    p_bench = sub.add_parser("bench", help="compare engine wall-clock times")
    p_bench.add_argument("--algebra", required=True)
    p_bench.add_argument("--max-degree", type=int, required=True)
    p_bench.set_defaults(func=_cmd_bench)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (LieAlgebraError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

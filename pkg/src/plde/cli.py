"""Command line front-end.

Subcommands:
    bound FILE       denominator bound report for an equation file
    spread POLY      spread lattice of a polynomial (or pair coset, box scan)
    classify FILE    classify a module against an equation's support
    transform FILE   apply a unimodular change of variables
    check FILE       verify a rational solution

Exit codes: 0 success, 1 malformed input, 2 unsupported input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bounds import BoundOptions, combined_bound
from .equation import EquationFormatError, UnsupportedCoefficientError, load_equation
from .geometry import classify_module
from .lattice import IntLattice, UnimodularMatrix, parse_module
from .polyring import ParseError, format_poly, parse_poly, parse_rational
from .spread import NEG_INFINITY, invariance_lattice, shift_equiv, spread_box_oracle
from .transform import transform_equation
from .verify import check_solution


class _InputError(Exception):
    def __init__(self, message, code=1):
        super().__init__(message)
        self.code = code


def _load(path):
    try:
        return load_equation(path)
    except FileNotFoundError:
        raise _InputError("no such file: %s" % path)
    except UnsupportedCoefficientError as exc:
        raise _InputError(str(exc), code=2)
    except (EquationFormatError, ParseError, ValueError) as exc:
        raise _InputError(str(exc))


def _parse_matrix(text):
    rows = [[int(x) for x in part.split(",")] for part in text.split(";")]
    return UnimodularMatrix(rows)


def _format_module(W: IntLattice) -> str:
    return str(W)


def cmd_bound(args) -> int:
    eq = _load(args.file)
    options = BoundOptions(
        coarse=args.coarse,
        refine=not args.no_refine,
        drop_aperiodic=not args.keep_aperiodic_in_wpart,
        box_radius=args.box,
    )
    report = combined_bound(eq, options)
    if args.json:
        print(json.dumps(report.to_json(), indent=2, sort_keys=True))
        return 0
    print("d: %s" % report.d)
    print("P: %s" % (" ".join(format_poly(p) for p in report.P) or "(none)"))
    print("modules:")
    for W in sorted(report.per_module, key=lambda L: L.key()):
        entry = report.per_module[W]
        line = "  W=%s class=%s" % (_format_module(W), entry.kind)
        if entry.s_value is not None:
            line += " s=%s" % ("-inf" if entry.s_value == NEG_INFINITY else entry.s_value)
        if entry.d_W is not None:
            line += " d_W=%s" % entry.d_W
        print(line)
    print("uncovered: %s" % (" ".join(_format_module(W) for W in report.uncovered) or "(none)"))
    print("warnings: %s" % ("; ".join(report.warnings) or "(none)"))
    return 0


def cmd_spread(args) -> int:
    vars = tuple(v.strip() for v in args.vars.split(","))
    p = parse_poly(args.poly, vars)
    if args.pair is not None:
        q = parse_poly(args.pair, vars)
        coset = shift_equiv(p, q)
        if coset.is_empty:
            print("empty" + ("" if coset.certain else " (box-limited)"))
        else:
            print("coset: %s" % coset)
        if args.box is not None:
            hits = sorted(spread_box_oracle(p, q, args.box))
            print("box: %s" % (" ".join("(%s)" % ",".join(map(str, h)) for h in hits) or "(none)"))
        return 0
    L = invariance_lattice(p)
    print("lattice: (%s)" % L if not L.is_zero() else "lattice: 0")
    if args.box is not None:
        hits = sorted(spread_box_oracle(p, p, args.box))
        print("box: %s" % (" ".join("(%s)" % ",".join(map(str, h)) for h in hits) or "(none)"))
    return 0


def cmd_classify(args) -> int:
    eq = _load(args.file)
    try:
        W = parse_module(args.module, len(eq.variables))
    except ValueError as exc:
        raise _InputError(str(exc))
    cls = classify_module(eq.support, W)
    print(cls.kind)
    if cls.certificate is not None:
        print(json.dumps(cls.certificate.to_json(), sort_keys=True))
    return 0


def cmd_transform(args) -> int:
    eq = _load(args.file)
    try:
        M = _parse_matrix(args.matrix)
    except ValueError as exc:
        raise _InputError(str(exc))
    if M.dim != len(eq.variables):
        raise _InputError("matrix size %d does not match %d variables"
                          % (M.dim, len(eq.variables)))
    out = transform_equation(eq, M)
    print(json.dumps(out.to_json(), indent=2, sort_keys=True))
    return 0


def cmd_check(args) -> int:
    eq = _load(args.file)
    try:
        y = parse_rational(args.solution, eq.variables)
    except (ParseError, ZeroDivisionError) as exc:
        raise _InputError(str(exc))
    result = check_solution(eq, y)
    if args.json:
        print(json.dumps({"ok": result.ok, "residual": str(result.residual)}, sort_keys=True))
    else:
        print("ok" if result.ok else "not a solution (residual %s)" % result.residual)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plde",
                                     description="Denominator bounds for rational solutions "
                                                 "of multivariate linear difference equations")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", help="compute a denominator bound report")
    b.add_argument("file")
    b.add_argument("--json", action="store_true")
    b.add_argument("--coarse", action="store_true",
                   help="use the literal shifted-coefficient product")
    b.add_argument("--no-refine", action="store_true",
                   help="use a single useful pair per module")
    b.add_argument("--keep-aperiodic-in-wpart", action="store_true")
    b.add_argument("--box", type=int, default=8, metavar="R",
                   help="fallback search radius for degenerate shift equivalences")
    b.set_defaults(func=cmd_bound)

    s = sub.add_parser("spread", help="spread lattice of a polynomial")
    s.add_argument("poly")
    s.add_argument("--vars", required=True, help="comma-separated variable names")
    s.add_argument("--pair", help="second polynomial: compute the pair coset")
    s.add_argument("--box", type=int, help="also run the exhaustive box oracle")
    s.set_defaults(func=cmd_spread)

    c = sub.add_parser("classify", help="classify a module against an equation")
    c.add_argument("file")
    c.add_argument("--module", required=True, help='generators, e.g. "1,-1" or "1,0;0,1" or "0"')
    c.set_defaults(func=cmd_classify)

    t = sub.add_parser("transform", help="apply a unimodular change of variables")
    t.add_argument("file")
    t.add_argument("--matrix", required=True,
                   help='point transform rows, e.g. "1,1;1,0"')
    t.set_defaults(func=cmd_transform)

    k = sub.add_parser("check", help="verify a rational solution")
    k.add_argument("file")
    k.add_argument("--solution", required=True)
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return exc.code
    except UnsupportedCoefficientError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

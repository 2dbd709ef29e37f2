"""Command-line front end.

Exit codes: 0 success or verified, 1 verification found a nonzero residual,
2 usage error, 3 internal or truncation error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import AlgebraError, ParseError, UnboundGeneratorError, VarSetMismatchError
from .exactalg import as_rational, format_poly, format_rational
from .fps import format_series
from .genera import (
    classify,
    cp_genus,
    elliptic_f,
    first_coefficients,
    generic_series,
    todd_f,
)
from .report import (
    generic_report,
    generic_text,
    obstruction_report,
    obstruction_text,
    verify_family,
    verify_text,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

# inclusive bounds on --order / --n per command
BOUNDS = {
    "todd": (3, 60),
    "elliptic": (3, 60),
    "generic": (4, 16),
    "verify": (4, 30),
    "genus": (1, 30),
}


def _rational(text: str):
    try:
        return as_rational(text)
    except (ParseError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cp2genus",
        description="Exact verification of CP(2)-multiplicative Hirzebruch genera.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("todd", help="two-parameter Todd series f(x)")
    p.add_argument("--order", type=int, required=True, help="highest power of x kept")
    p.add_argument("--alpha", type=_rational)
    p.add_argument("--beta", type=_rational)
    add_format(p)

    p = sub.add_parser("elliptic", help="elliptic-family series f(x)")
    p.add_argument("--order", type=int, required=True, help="highest power of x kept")
    p.add_argument("--a", type=_rational)
    p.add_argument("--b", type=_rational)
    add_format(p)

    p = sub.add_parser("generic", help="f4..fN solved in terms of f1, f2, f3")
    p.add_argument("--order", type=int, required=True, help="largest index N")
    p.add_argument("--nested", action="store_true", help="express f_k through all lower f_j")
    add_format(p)

    p = sub.add_parser("verify", help="check the functional equation for a family")
    p.add_argument("family", choices=("todd", "elliptic"))
    p.add_argument("--order", type=int, required=True, help="total order i + j checked")
    p.add_argument("--timing", action="store_true", help="include elapsed time (not byte-stable)")
    add_format(p)

    p = sub.add_parser("classify", help="classify a genus from f1, f2, f3")
    p.add_argument("--f1", type=_rational, required=True)
    p.add_argument("--f2", type=_rational, required=True)
    p.add_argument("--f3", type=_rational, required=True)
    add_format(p)

    p = sub.add_parser("genus", help="L_f[CP(n)]")
    p.add_argument("--family", choices=("todd", "elliptic", "generic"), required=True)
    p.add_argument("--n", type=int, required=True)
    for name in ("alpha", "beta", "a", "b"):
        p.add_argument(f"--{name}", type=_rational)
    add_format(p)

    p = sub.add_parser("obstruction", help="factor the two f8 determinations as c*C*K^2")
    add_format(p)
    return parser


def _bindings(args, names) -> dict:
    return {n: getattr(args, n) for n in names if getattr(args, n, None) is not None}


def _series_output(family: str, g, bindings: dict, fmt: str) -> str:
    if bindings:
        g = g.specialize(bindings)
    fks = first_coefficients(g)
    if fmt == "json":
        data = {
            "family": family,
            "generators": list(g.vars.names),
            "bindings": {k: format_rational(v) for k, v in bindings.items()},
            "series": g.f.to_json(),
            "coefficients": {f"f{k}": format_poly(c) for k, c in enumerate(fks, 1)},
        }
        return json.dumps(data, indent=2) + "\n"
    lines = [f"f = {format_series(g.f)}"]
    lines += [f"f{k} = {format_poly(c)}" for k, c in enumerate(fks, 1)]
    return "\n".join(lines) + "\n"


def _dump(data: dict) -> str:
    return json.dumps(data, indent=2) + "\n"


def dispatch(args) -> tuple:
    """Return ``(exit_code, stdout_text)`` for parsed arguments."""
    cmd = args.command
    if cmd == "todd":
        g = todd_f(args.order)
        return EXIT_OK, _series_output("todd", g, _bindings(args, ("alpha", "beta")), args.format)
    if cmd == "elliptic":
        g = elliptic_f(args.order)
        return EXIT_OK, _series_output("elliptic", g, _bindings(args, ("a", "b")), args.format)
    if cmd == "generic":
        rep = generic_report(args.order, nested=args.nested)
        return EXIT_OK, _dump(rep) if args.format == "json" else generic_text(rep)
    if cmd == "verify":
        rep = verify_family(args.family, args.order, timing=args.timing)
        code = EXIT_OK if rep["residual"]["status"] == "zero" else EXIT_FAILED
        return code, _dump(rep) if args.format == "json" else verify_text(rep)
    if cmd == "classify":
        cl = classify(args.f1, args.f2, args.f3)
        if args.format == "json":
            data = {
                "tag": cl.tag,
                "C": format_rational(cl.C),
                "K": format_rational(cl.K),
                "todd": None if cl.todd is None else {
                    "alpha+beta": format_rational(cl.todd[0]),
                    "alpha*beta": format_rational(cl.todd[1]),
                },
                "elliptic": None if cl.elliptic is None else {
                    "a": format_rational(cl.elliptic[0]),
                    "b": format_rational(cl.elliptic[1]),
                },
            }
            return EXIT_OK, _dump(data)
        return EXIT_OK, cl.describe() + "\n"
    if cmd == "genus":
        n = args.n
        if args.family == "todd":
            g = todd_f(max(n + 1, 3))
            bindings = _bindings(args, ("alpha", "beta"))
        elif args.family == "elliptic":
            g = elliptic_f(max(n + 1, 3))
            bindings = _bindings(args, ("a", "b"))
        else:
            g = generic_series(n)
            bindings = {}
        if bindings:
            g = g.specialize(bindings)
        value = format_poly(cp_genus(g, n))
        if args.format == "json":
            return EXIT_OK, _dump({"family": args.family, "n": n, "value": value})
        return EXIT_OK, f"L[CP({n})] = {value}\n"
    if cmd == "obstruction":
        rep = obstruction_report()
        return EXIT_OK, _dump(rep) if args.format == "json" else obstruction_text(rep)
    raise AssertionError(cmd)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    key = args.command
    if key in BOUNDS:
        lo, hi = BOUNDS[key]
        value = args.n if key == "genus" else args.order
        if not lo <= value <= hi:
            flag = "--n" if key == "genus" else "--order"
            parser.error(f"{key}: {flag} must be between {lo} and {hi}")
    if key == "genus" and args.family == "generic":
        if any(getattr(args, n) is not None for n in ("alpha", "beta", "a", "b")):
            parser.error("genus: the generic family takes no parameter bindings")
    try:
        code, out = dispatch(args)
    except (ParseError, UnboundGeneratorError, VarSetMismatchError) as exc:
        print(f"cp2genus: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AlgebraError as exc:
        print(f"cp2genus: error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands: lvalue, epsilon, certify, siegel-series, eisenstein-coeff,
cohen-series.  All numeric input is exact; output is deterministic JSON
(stable key order, rationals as {"num": ..., "den": ...} decimal strings),
CSV for the scalar lvalue table, or a human-readable pretty format.  The
default q-expansion precision can be overridden with --precision or the
EISCONG_PRECISION environment variable; --budget caps the character-sum
enumeration.

Exit codes: 0 success (for certify: verdict established), 1 certify ran but
the verdict is NotEstablished, 2 usage errors, 3 typed computation errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .arith import ord_p
from .eisen import EisensteinContext
from .errors import BudgetExceeded, SingularSystem, UnsupportedHeckeField
from .pullback import Strictness, certify
from .qexp import cohen_series, default_precision, eigen_basis, std_l_value
from .quadform import HalfIntegralMatrix, format_half_integral, parse_half_integral
from .siegelseries import DEFAULT_BUDGET, local_F

__all__ = ["main"]


def _rat(x: Fraction | int) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _rat_str(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _matrix_arg(text: str) -> HalfIntegralMatrix:
    try:
        return parse_half_integral(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p.strip()) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated integer list")


def _pair(text: str) -> tuple[int, int]:
    vals = _int_list(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError("expected two comma-separated integers")
    return vals  # type: ignore[return-value]


def _precision(args: argparse.Namespace, weight: int) -> int:
    if getattr(args, "precision", None) is not None:
        return args.precision
    env = os.environ.get("EISCONG_PRECISION")
    if env:
        return int(env)
    return default_precision(weight)


# ---------------------------------------------------------------------------
# Subcommand handlers: each returns (document, exit_code)


def _cmd_lvalue(args) -> tuple[dict, int]:
    k, nu = args.k, args.nu
    prec = _precision(args, k + nu)
    basis = eigen_basis(k + nu, prec)
    rows = []
    for j, f in enumerate(basis.forms):
        value = std_l_value(k, nu, f)
        row = {
            "form": j,
            "t2_eigenvalue": _rat(f.coefficient(2)),
            "l_value": _rat(value),
        }
        for p in args.ords or ():
            row[f"ord_{p}"] = ord_p(p, value) if value != 0 else None
        rows.append(row)
    doc = {
        "command": "lvalue",
        "k": k,
        "nu": nu,
        "weight": k + nu,
        "precision": prec,
        "forms": rows,
    }
    return doc, 0


def _cmd_epsilon(args) -> tuple[dict, int]:
    from .pullback import epsilon

    form = epsilon(args.k, args.nu, args.n, args.N)
    doc = {
        "command": "epsilon",
        "k": args.k,
        "nu": args.nu,
        "n": args.n,
        "N": format_half_integral(args.N),
        "degree": form.degree,
        "coeffs": [_rat(c) for c in form.coeffs],
    }
    if args.at:
        doc["evaluations"] = [
            {"at": list(pt), "value": _rat(form.evaluate(*pt))} for pt in args.at
        ]
    return doc, 0


def _cmd_certify(args) -> tuple[dict, int]:
    cert = certify(
        args.k,
        args.nu,
        args.p,
        args.A,
        m_list=args.m_list,
        slot=args.slot,
        strictness=Strictness.RELAXED if args.relaxed else Strictness.STRICT,
    )
    doc = cert.to_json_dict()
    return doc, 0 if cert.verdict.value != "NotEstablished" else 1


def _cmd_siegel_series(args) -> tuple[dict, int]:
    f = local_F(args.p, args.T, args.budget)
    return {
        "command": "siegel-series",
        "p": args.p,
        "T": format_half_integral(args.T),
        "coeffs": [str(c) for c in f.coeffs],
    }, 0


def _cmd_eis_coeff(args) -> tuple[dict, int]:
    ctx = EisensteinContext(args.degree, args.k, args.budget)
    value = ctx.coefficient(args.T)
    return {
        "command": "eisenstein-coeff",
        "degree": args.degree,
        "k": args.k,
        "T": format_half_integral(args.T),
        "value": _rat(value),
    }, 0


def _cmd_cohen_series(args) -> tuple[dict, int]:
    prec = _precision(args, args.k)
    series = cohen_series(args.k, args.r, prec)
    return {
        "command": "cohen-series",
        "k": args.k,
        "r": args.r,
        "precision": prec,
        "coeffs": [_rat(c) for c in series.coeffs],
    }, 0


# ---------------------------------------------------------------------------
# Output formatting


def _emit(doc: dict, fmt: str, out) -> None:
    if fmt == "json":
        print(json.dumps(doc, indent=2), file=out)
        return
    if fmt == "csv":
        if doc.get("command") != "lvalue":
            raise ValueError("csv output is only available for the lvalue table")
        ord_cols = sorted(
            {key for row in doc["forms"] for key in row if key.startswith("ord_")}
        )
        print(",".join(["form", "t2_eigenvalue", "l_value", *ord_cols]), file=out)
        for row in doc["forms"]:
            cells = [
                str(row["form"]),
                _rat_str(Fraction(int(row["t2_eigenvalue"]["num"]), int(row["t2_eigenvalue"]["den"]))),
                _rat_str(Fraction(int(row["l_value"]["num"]), int(row["l_value"]["den"]))),
            ]
            cells += [str(row.get(c, "")) for c in ord_cols]
            print(",".join(cells), file=out)
        return
    # pretty
    print(_pretty(doc), file=out)


def _pretty(doc: dict, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for key, val in doc.items():
        if isinstance(val, dict) and set(val) == {"num", "den"}:
            lines.append(f"{pad}{key}: {_rat_str(Fraction(int(val['num']), int(val['den'])))}")
        elif isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_pretty(val, indent + 1))
        elif isinstance(val, list):
            rendered = []
            for item in val:
                if isinstance(item, dict) and set(item) == {"num", "den"}:
                    rendered.append(_rat_str(Fraction(int(item["num"]), int(item["den"]))))
                elif isinstance(item, dict):
                    rendered.append("\n" + _pretty(item, indent + 1))
                else:
                    rendered.append(str(item))
            lines.append(f"{pad}{key}: [{', '.join(r for r in rendered)}]")
        else:
            lines.append(f"{pad}{key}: {val}")
    return "\n".join(lines)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eiscong",
        description="Exact computations around degree <= 3 Siegel-Eisenstein "
        "series and eigenvalue congruence certificates.",
    )
    parser.add_argument(
        "--format",
        choices=("json", "csv", "pretty"),
        default="json",
        help="output format (csv is restricted to the lvalue table)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lvalue", help="normalized standard L-values at k-1")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--ords", type=_int_list, default=(), help="primes for p-order columns")
    p.add_argument("--precision", type=int)
    p.set_defaults(handler=_cmd_lvalue)

    p = sub.add_parser("epsilon", help="pullback coefficient as a binary form")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--N", type=_matrix_arg, required=True, help='2x2 matrix "a,b,c"')
    p.add_argument("--at", type=_pair, action="append", help="evaluation point x,y")
    p.set_defaults(handler=_cmd_epsilon)

    p = sub.add_parser("certify", help="assemble a congruence certificate")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--A", type=_matrix_arg, required=True, help='2x2 matrix "a,b,c"')
    p.add_argument("--m-list", type=_int_list, default=None)
    p.add_argument("--slot", type=int, default=None)
    p.add_argument("--relaxed", action="store_true", help="waive the size bound")
    p.set_defaults(handler=_cmd_certify)

    p = sub.add_parser("siegel-series", help="coefficients of the local polynomial factor")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--T", type=_matrix_arg, required=True, help='"t", "a,b,c" or six entries')
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(handler=_cmd_siegel_series)

    p = sub.add_parser("eisenstein-coeff", help="normalized Eisenstein Fourier coefficient")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--T", type=_matrix_arg, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(handler=_cmd_eis_coeff)

    p = sub.add_parser("cohen-series", help="dump the q-expansion of the H-coefficient series")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--precision", type=int)
    p.set_defaults(handler=_cmd_cohen_series)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        doc, code = args.handler(args)
        _emit(doc, args.format, sys.stdout)
        return code
    except (UnsupportedHeckeField, SingularSystem, BudgetExceeded, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

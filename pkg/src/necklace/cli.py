"""Command-line front end.

Exit status: 0 on success, 1 when a check finds a counterexample, 2 on
bad input (parse errors, unknown names, dimension or quiver mismatches).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import hopf, lie, rep, suites
from .expr import is_heighted, parse_element, parse_heighted
from .heights import HeightedElement, format_heighted, phi_w
from .hpoly import HPoly
from .necklaces import format_monomial
from .quiver import DoubleQuiver, QuiverError, load_quiver
from .reppoly import DimensionError, dim_vector
from .symalg import SymLElement, TensorElement


class UsageError(ValueError):
    pass


def parse_dims(dq: DoubleQuiver, text: str) -> tuple[int, ...]:
    """``2``, ``1,2`` (vertex order) or ``v=2,w=1`` (by name)."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    try:
        if any("=" in p for p in parts):
            named = {}
            for p in parts:
                k, _, v = p.partition("=")
                named[k.strip()] = int(v)
            return dim_vector(dq, named)
        return dim_vector(dq, [int(p) for p in parts])
    except ValueError as exc:
        raise DimensionError(f"bad dimension vector {text!r}: {exc}") from None


def _coeff_json(c: HPoly) -> dict:
    return {str(k): str(q) for k, q in c.items()}


def element_json(x) -> list:
    dq = x.quiver
    if isinstance(x, SymLElement):
        return [
            {"monomial": format_monomial(dq, m), "coefficient": _coeff_json(c)}
            for m, c in x.sorted_items()
        ]
    if isinstance(x, TensorElement):
        return [
            {"tensor": [format_monomial(dq, m) for m in k], "coefficient": _coeff_json(c)}
            for k, c in x.sorted_items()
        ]
    if isinstance(x, HeightedElement):
        items = sorted(x.terms.items(), key=lambda t: (t[0].size, t[0]))
        return [{"collection": format_heighted(dq, k), "coefficient": _coeff_json(c)} for k, c in items]
    return x.to_json()


def _emit(value, fmt: str) -> str:
    if fmt == "json":
        if isinstance(value, HPoly):
            return json.dumps({"coefficient": _coeff_json(value)}, sort_keys=True)
        return json.dumps(element_json(value), sort_keys=True)
    return str(value)


def _single_necklaces(a: SymLElement):
    for m in a.terms:
        if len(m) != 1:
            raise UsageError("bracket and cobracket take linear combinations of single necklaces")


def _rho_input(dq, text):
    return parse_heighted(dq, text) if is_heighted(text) else phi_w(parse_element(dq, text))


def run_operation(args) -> tuple[int, str]:
    dq = load_quiver(args.quiver)
    op = args.command
    if op in ("star", "bracket"):
        a, b = parse_element(dq, args.a), parse_element(dq, args.b)
        if op == "star":
            value = hopf.star(a, b)
        else:
            _single_necklaces(a)
            _single_necklaces(b)
            value = lie.bracket_elements(a, b)
    elif op == "rho":
        value = rep.rho_element(_rho_input(dq, args.a), parse_dims(dq, args.dims))
    else:
        a = parse_element(dq, args.a)
        if op == "coprod":
            value = hopf.coproduct(a)
        elif op == "antipode":
            value = hopf.antipode(a)
        elif op == "counit":
            value = hopf.counit(a)
        elif op == "cobracket":
            _single_necklaces(a)
            value = lie.cobracket_element(a)
        elif op == "phiw":
            value = phi_w(a)
        elif op == "trace":
            value = rep.tr_l(a, parse_dims(dq, args.dims))
        else:
            raise UsageError(f"unknown command {op!r}")
    return 0, _emit(value, args.format)


def run_check(args) -> tuple[int, str]:
    dq = load_quiver(args.quiver)
    dims_list = [parse_dims(dq, d) for d in args.dims] if args.dims else None
    if args.trials < 0 or args.max_edges < 0:
        raise UsageError("--trials and --max-edges must be nonnegative")
    report = suites.run_suite(
        dq,
        args.suite,
        trials=args.trials,
        seed=args.seed,
        max_edges=args.max_edges,
        dims_list=dims_list,
        exhaustive=args.exhaustive,
    )
    status = 0 if report.ok else 1
    if args.format == "json":
        first = report.failures[0] if report.failures else None
        out = json.dumps(
            {
                "suite": report.suite,
                "mode": report.mode,
                "cases": report.cases,
                "failures": len(report.failures),
                "seed": args.seed,
                "max_edges": args.max_edges,
                "first_failure": None if first is None else {"case": first[0], "report": first[1]},
            },
            sort_keys=True,
        )
        return status, out
    settings = f"{report.mode}, max-edges {args.max_edges}"
    if not args.exhaustive:
        settings += f", seed {args.seed}"
    if report.ok:
        return 0, f"{report.suite}: ok, {report.cases} cases ({settings})"
    idx, text = report.failures[0]
    return 1, (
        f"{report.suite}: {len(report.failures)} of {report.cases} cases FAILED ({settings})\n"
        f"first counterexample (case {idx}):\n{text}"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="necklace",
        description="Exact computations in the necklace Hopf algebra of a quiver.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, nargs=1, dims=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("-q", "--quiver", required=True, help="quiver file")
        p.add_argument("a", metavar="ELEMENT")
        if nargs == 2:
            p.add_argument("b", metavar="ELEMENT")
        if dims:
            p.add_argument("--dims", required=True, help="dimension vector, e.g. 2 or 1,2 or v=2")
        p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    add("star", "star product of two elements", 2)
    add("coprod", "coproduct")
    add("antipode", "antipode")
    add("counit", "counit")
    add("bracket", "necklace Lie bracket", 2)
    add("cobracket", "necklace Lie cobracket")
    add("phiw", "average over height assignments")
    add("trace", "trace map to representation-space polynomials", dims=True)
    add("rho", "operator representation of a height-labelled (or plain, symmetrised) element", dims=True)

    c = sub.add_parser("check", help="run an identity suite")
    c.add_argument("suite", choices=suites.SUITES)
    c.add_argument("-q", "--quiver", required=True, help="quiver file")
    c.add_argument("--trials", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--max-edges", type=int, default=4)
    c.add_argument("--dims", action="append", help="dimension vector; repeat for several")
    c.add_argument("--exhaustive", action="store_true", help="sweep every basis input up to --max-edges")
    c.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "check":
            status, out = run_check(args)
        else:
            status, out = run_operation(args)
    except (QuiverError, DimensionError, UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(out)
    return status


if __name__ == "__main__":
    sys.exit(main())

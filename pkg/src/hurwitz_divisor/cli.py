"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 resource guard tripped.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from typing import Sequence

from . import braid, checks, exactcomb as ec, picard, symcover

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class UsageError(Exception):
    pass


def _latex(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    sign = "-" if x < 0 else ""
    return f"{sign}\\frac{{{abs(x.numerator)}}}{{{x.denominator}}}"


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# renderers
# ---------------------------------------------------------------------------


def render_class(cls: picard.DivisorClass, fmt: str) -> str:
    if fmt == "json":
        return _dumps(cls.to_json())
    names = ["lambda"] + [f"delta_{j}" for j in range(cls.k + 1)]
    if fmt == "csv":
        return _csv([["basis", "coefficient"]] + [[n, str(c)] for n, c in zip(names, cls.coefficients())])
    tex = ["\\lambda"] + [f"\\delta_{{{j}}}" for j in range(cls.k + 1)]
    terms = [f"{_latex(c)}\\,{t}" for c, t in zip(cls.coefficients(), tex)]
    return " + ".join(terms).replace("+ -", "- ")


def render_report(report: braid.OrbitReport, fmt: str) -> str:
    data = report.to_json()
    if fmt == "json":
        return _dumps(data)
    if fmt == "csv":
        keys = sorted(data)
        row = [";".join(map(str, data[k])) if isinstance(data[k], list) else data[k] for k in keys]
        return _csv([keys, row])
    lines = ["\\begin{tabular}{ll}"]
    for k in sorted(data):
        v = data[k]
        if isinstance(v, list):
            v = ", ".join(map(str, v))
        lines.append(f"\\verb|{k}| & \\verb|{v}| \\\\")
    lines.append("\\end{tabular}")
    return "\n".join(lines)


def degree_rows(k: int, raw: bool) -> list[dict]:
    scale = math.factorial(6 * k) if raw else 1
    n = ec.catalan_N(k)
    rows = [{"divisor": "E0", "j": 0, "c": 0, "degree": ec.e0_degree_normalized(k) * scale, "j_sum": None}]
    for j in range(1, k + 1):
        degs = [ec.restricted_degree_normalized(k, j, c) for c in range(j // 2 + 1)]
        total = sum(degs)
        for c, deg in enumerate(degs):
            rows.append({"divisor": f"E{j},{c}", "j": j, "c": c, "degree": deg * scale, "j_sum": total * scale})
    return rows


def render_degrees(k: int, fmt: str, raw: bool) -> str:
    rows = degree_rows(k, raw)
    if fmt == "json":
        return _dumps(
            {
                "k": k,
                "normalized": not raw,
                "N": ec.catalan_N(k),
                "rows": [
                    {**r, "degree": str(r["degree"]), "j_sum": None if r["j_sum"] is None else str(r["j_sum"])}
                    for r in rows
                ],
            }
        )
    if fmt == "csv":
        out = [["divisor", "j", "c", "degree", "j_sum"]]
        out += [[r["divisor"], r["j"], r["c"], str(r["degree"]), "" if r["j_sum"] is None else str(r["j_sum"])] for r in rows]
        return _csv(out)
    lines = ["\\begin{tabular}{rrrr}", "$j$ & $c$ & degree & $\\sum_c$ \\\\"]
    for r in rows:
        s = "" if r["j_sum"] is None else _latex(r["j_sum"])
        lines.append(f"{r['j']} & {r['c']} & ${_latex(r['degree'])}$ & ${s}$ \\\\")
    lines.append("\\end{tabular}")
    return "\n".join(lines)


def render_scalar(name: str, value: int, params: dict, fmt: str) -> str:
    if fmt == "json":
        return _dumps({**params, name: value})
    if fmt == "csv":
        keys = sorted(params) + [name]
        return _csv([keys, [params[k] for k in sorted(params)] + [value]])
    return str(value)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_class(args) -> int:
    try:
        if args.divisor == "d3":
            if args.method == "pipeline":
                raise UsageError("the pipeline derives [D_2] only")
            cls = picard.d3_class(args.k)
        elif args.method == "theorem":
            cls = picard.d2_class_theorem(args.k)
        else:
            cls = picard.d2_class_pipeline(args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(render_class(cls, args.format))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.k_max < 2:
        raise UsageError("--k-max must be at least 2")
    failed = 0
    for r in checks.run_suite(args.suite, args.k_max, args.workers):
        print(r.line())
        failed += not r.ok
    print(f"{'FAILED' if failed else 'OK'}: {failed} failing check(s)")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_orbit(args) -> int:
    try:
        phi = symcover.Permutation.from_cycles(args.phi, args.d)
    except ValueError as exc:
        raise UsageError(f"cannot parse --phi: {exc}") from None
    group = braid.PURE if args.group == "pure" else braid.FULL
    sigma0 = None
    if group == braid.PURE:
        ct = symcover.cycle_type(phi)
        if phi == symcover.representative(ct):
            sigma0 = braid.canonical_sigma0(ct, args.d, args.b)
    report = braid.orbits(
        args.d, args.b, phi, group, quotient=args.quotient, workers=args.workers, sigma0=sigma0
    )
    print(render_report(report, args.format))
    return EXIT_OK


def cmd_hurwitz(args) -> int:
    try:
        extra = symcover.parse_partition(args.extra).parts if args.extra else ()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if sum(extra) > args.d:
        raise UsageError(f"--extra {args.extra} does not fit in degree {args.d}")
    mu = extra + (1,) * (args.d - sum(extra))
    count = symcover.count_covers(args.d, args.simple, mu, workers=args.workers)
    params = {"d": args.d, "simple": args.simple, "extra": symcover.format_partition(mu)}
    print(render_scalar("count", count, params, args.format))
    return EXIT_OK


def cmd_degrees(args) -> int:
    if args.k < 1:
        raise UsageError("--k must be at least 1")
    print(render_degrees(args.k, args.format, args.raw))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hdl",
        description="Hurwitz divisor classes on the moduli of curves of even genus, "
        "with exact arithmetic and braid-monodromy certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("json", "csv", "latex"), default="json")

    p = sub.add_parser("class", help="print the class of D_2 or D_3 on M_{2k}")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--divisor", choices=("d2", "d3"), default="d2")
    p.add_argument("--method", choices=("theorem", "pipeline"), default="theorem")
    add_format(p)
    p.set_defaults(func=cmd_class)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--k-max", type=int, default=10)
    p.add_argument("--suite", choices=("identities", "classes", "orbits", "all"), default="all")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("orbit", help="braid orbits on Hurwitz tuples")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--phi", required=True, help='cycle notation, e.g. "(1 2 3)"')
    p.add_argument("--group", choices=("braid", "pure"), default="braid")
    p.add_argument("--quotient", action="store_true", help="identify tuples up to centralizer conjugation")
    p.add_argument("--workers", type=int, default=1)
    add_format(p)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("hurwitz", help="count covers with simple branching plus one extra profile")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--simple", type=int, required=True, help="number of simple branch points")
    p.add_argument("--extra", default="", help='ramification over the extra point, e.g. "3" or "2,2"')
    p.add_argument("--workers", type=int, default=1)
    add_format(p)
    p.set_defaults(func=cmd_hurwitz)

    p = sub.add_parser("degrees", help="degrees of pi on the boundary divisors over Delta_j")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--raw", action="store_true", help="multiply back by (6k)!")
    add_format(p)
    p.set_defaults(func=cmd_degrees)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"hdl {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (symcover.EnumerationTooLarge, braid.OrbitMemoryExceeded) as exc:
        print(f"hdl {args.command}: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"hdl {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

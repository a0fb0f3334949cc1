"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 symbol budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .digitset import (
    DEFAULT_BUDGET,
    build_substitution,
    hausdorff_dimension,
    iterate_substitution,
    membership_prefix,
    new_digit_set,
)
from .errors import BudgetExceeded, InvalidDigitSet
from .mahler import characteristic_polynomial, digit_polynomial, mahler_eigenvalue, mahler_equation
from .measures import ROUTES, fourier_csv, fourier_table, staircase_csv, staircase_samples, staircase_svg
from .verify import SUITES

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3


def _digits(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _meta(args: argparse.Namespace) -> dict | None:
    if args.no_meta:
        return None
    params = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in {"func", "out", "no_meta", "format"} and v is not None
    }
    params["version"] = __version__
    params["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return params


def _rows_csv(header: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([row[h] for h in header])
    return buf.getvalue()


def _emit(args, text_csv: str, rows: list[dict], extra: dict | None = None) -> None:
    meta = _meta(args)
    if args.format == "json":
        doc: dict = {}
        if meta is not None:
            doc["meta"] = meta
        doc["rows"] = rows
        if extra:
            doc.update(extra)
        out = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    else:
        out = ""
        if meta is not None:
            out += "# meta: " + json.dumps(meta, ensure_ascii=False) + "\n"
        out += text_csv
        for key, value in (extra or {}).get("summary", {}).items():
            out += f"# {key}={value}\n"
    _write(args, out)


def _write(args, text: str) -> None:
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _digit_set(args):
    return new_digit_set(args.q, args.digits)


def cmd_analyze(args) -> int:
    ds = _digit_set(args)
    sub = build_substitution(ds)
    eq = mahler_equation(ds)
    lam = mahler_eigenvalue(eq).value
    dim_ifs = hausdorff_dimension(ds)
    dim_mahler = math.log(lam) / math.log(ds.q)
    fields = [
        ("q", ds.q),
        ("A", ",".join(map(str, ds.digits))),
        ("m", ds.m),
        ("image_of_one", str(sub.image_of_one)),
        ("image_of_zero", str(sub.image_of_zero)),
        ("digit_polynomial", str(digit_polynomial(ds))),
        ("mahler_equation", str(eq)),
        ("characteristic_polynomial", str(characteristic_polynomial(eq))),
        ("mahler_eigenvalue", str(lam)),
        ("dimension_log_q_m", f"{dim_ifs:.17g}"),
        ("dimension_log_q_eigenvalue", f"{dim_mahler:.17g}"),
        ("routes_agree", str(abs(dim_ifs - dim_mahler) <= 1e-12).lower()),
    ]
    rows = [{"field": k, "value": v} for k, v in fields]
    _emit(args, _rows_csv(["field", "value"], rows), rows)
    return EXIT_OK


def cmd_sequence(args) -> int:
    ds = _digit_set(args)
    if args.oracle:
        word = membership_prefix(ds, args.k, budget=args.budget)
    else:
        word = iterate_substitution(build_substitution(ds), args.k, budget=args.budget)
    text = str(word)
    if args.format == "text":
        _write(args, text + "\n")
    else:
        rows = [{"k": args.k, "word": text}]
        _emit(args, _rows_csv(["k", "word"], rows), rows)
    return EXIT_OK


def cmd_fourier(args) -> int:
    ds = _digit_set(args)
    routes = [r.strip() for r in args.routes.split(",")]
    ns = range(args.n_min, args.n_max + 1)
    table = fourier_table(ds, ns, routes, k=args.k, L=args.L, budget=args.budget)
    by_route: dict[str, np.ndarray] = {}
    for r in routes:
        by_route[r] = np.array([c.value for c in table if c.route == r])
    summary = {}
    for a, b in [
        ("direct", "finite_product"),
        ("level_measure", "finite_product"),
        ("finite_product", "truncated_limit"),
    ]:
        if a in by_route and b in by_route and len(by_route[a]):
            summary[f"max|{a}-{b}|"] = f"{float(np.abs(by_route[a] - by_route[b]).max()):.3e}"
    rows = [
        {"n": c.n, "route": c.route, "k_or_L": c.param, "re": c.value.real, "im": c.value.imag}
        for c in table
    ]
    _emit(args, fourier_csv(table), rows, {"summary": summary})
    return EXIT_OK


def cmd_staircase(args) -> int:
    ds = _digit_set(args)
    samples = staircase_samples(ds, args.k, args.grid, budget=args.budget)
    rows = [{"x": float(s.x), "F": s.value} for s in samples]
    _emit(args, staircase_csv(samples), rows)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(staircase_svg(samples))
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    checks = [c for name in names for c in SUITES[name]()]
    failed = sum(not c.passed for c in checks)
    lines = [c.line() for c in checks]
    lines.append(f"{len(checks) - failed}/{len(checks)} checks passed")
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK if not failed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max materialized symbols")
    common.add_argument("--no-meta", action="store_true", help="omit the metadata block")

    ds_args = argparse.ArgumentParser(add_help=False)
    ds_args.add_argument("--q", type=int, required=True, help="base q >= 2")
    ds_args.add_argument("--digits", type=_digits, required=True, help="digit set, e.g. 0,2")

    table = argparse.ArgumentParser(add_help=False)
    table.add_argument("--format", choices=["csv", "json"], default="csv")

    parser = argparse.ArgumentParser(prog="digitfractal", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common, ds_args, table], help="dimension and Mahler data")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sequence", parents=[common, ds_args], help="print rho^k(1)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="generate by digit membership instead")
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("fourier", parents=[common, ds_args, table], help="Fourier coefficient table")
    p.add_argument("--k", type=int, default=8)
    p.add_argument("--L", type=int, default=None, help="limit depth (default ceil(log_q |n|) + 40)")
    p.add_argument("--n-min", type=int, default=-50)
    p.add_argument("--n-max", type=int, default=50)
    p.add_argument("--routes", default=",".join(ROUTES))
    p.set_defaults(func=cmd_fourier)

    p = sub.add_parser("staircase", parents=[common, ds_args, table], help="distribution function samples")
    p.add_argument("--k", type=int, default=6)
    p.add_argument("--grid", type=int, default=729, help="number of sample points")
    p.add_argument("--svg", help="also write an SVG polyline here")
    p.set_defaults(func=cmd_staircase)

    p = sub.add_parser("verify", parents=[common], help="run a built-in invariant suite")
    p.add_argument("--suite", choices=[*SUITES, "all"], required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidDigitSet as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetExceeded as exc:
        print(f"error: BudgetExceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

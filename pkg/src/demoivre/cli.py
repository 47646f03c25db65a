"""Command-line entry point: ``demoivre`` (or ``python -m demoivre``).

Exit status is 0 on success, 1 when a check fails and 2 for usage errors
(bad arguments, ranges beyond the size caps).  ``DEMOIVRE_MAX_N`` raises
the caps.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import asymptotics as asy
from . import checks
from . import sequences as seq
from .algebra import format_rational, parse_rational
from .core import BoundExceeded, coefficient_gcd, default_max_n, demoivre_eval, demoivre_symbolic

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# fixed column headers for table output
TABLE_HEADERS = {
    "partition": ["n", "p"],
    "tau": ["n", "tau"],
    "bernoulli": ["n", "B"],
    "stirling": ["n", "k", "subset", "cycle"],
    "stirling-gamma": ["m", "gamma"],
    "cyclotomic": ["n", "degree", "coefficients"],
    "gamma": ["m", "taylor_coefficient"],
    "partition-asym": ["r", "exact", "float"],
}

GAMMA_TAYLOR_MAX = 20
PARTITION_ASYM_MAX = 40


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _cell(x) -> str:
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _render(headers: list[str], rows: list[list], fmt: str) -> str:
    if fmt == "json":
        return _dump([{h: (v if isinstance(v, (int, float)) else _cell(v)) for h, v in zip(headers, r)} for r in rows])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(headers)
        w.writerows([[_cell(v) for v in r] for r in rows])
        return buf.getvalue().rstrip("\n")
    cells = [headers] + [[_cell(v) for v in r] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    return "\n".join("  ".join(c.rjust(wd) for c, wd in zip(row, widths)).rstrip() for row in cells)


def _bounded(value: int, cap: int, what: str) -> int:
    if value < 0:
        raise UsageError(f"{what} must be nonnegative")
    if value > cap:
        raise UsageError(f"{what}={value} exceeds the bound {cap} (set DEMOIVRE_MAX_N to raise it)")
    return value


# ---------------------------------------------------------------------------
# subcommands


def cmd_demoivre(args) -> int:
    n, k = args.n, args.k
    if n < 0 or k < 0:
        raise UsageError("n and k must be nonnegative")
    if args.gcd:
        g = coefficient_gcd(n, k)
        print(_dump({"n": n, "k": k, "gcd": g}) if args.json else g)
        return EXIT_OK
    if args.eval is not None:
        try:
            a = [parse_rational(x) for x in args.eval.split(",") if x.strip()]
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"cannot parse --eval values: {exc}") from None
        value = demoivre_eval(n, k, a)
        print(_dump({"n": n, "k": k, "a": [format_rational(x) for x in a], "value": format_rational(value)})
              if args.json else format_rational(value))
        return EXIT_OK
    poly = demoivre_symbolic(n, k)
    print(poly.dumps() if args.json else str(poly))
    return EXIT_OK


def cmd_check(args) -> int:
    reports = checks.run_suite(args.suite, args.max_n, args.seed)
    if args.json:
        print(_dump({"reports": [r.to_json() for r in reports], "pass": all(r.ok for r in reports)}))
    else:
        for r in reports:
            print("\n".join(r.lines()))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def _table_rows(args) -> tuple[list[str], list[list]]:
    cap = default_max_n()
    obj = args.object
    if obj == "partition":
        top = _bounded(args.max, cap, "--max")
        return TABLE_HEADERS[obj], [[n, p] for n, p in enumerate(seq.partition_numbers(top))]
    if obj == "tau":
        top = _bounded(args.max, cap, "--max")
        return TABLE_HEADERS[obj], [[n, seq.tau_numbers(top)[n]] for n in range(1, top + 1)]
    if obj == "bernoulli":
        top = _bounded(args.max, cap, "--max")
        return TABLE_HEADERS[obj], [[n, b] for n, b in enumerate(seq.bernoulli_numbers(top, "demoivre"))]
    if obj == "stirling":
        if args.gamma:
            top = _bounded(args.max, cap, "--max")
            return TABLE_HEADERS["stirling-gamma"], [[m, g] for m, g in enumerate(asy.stirling_gammas(top))]
        top = _bounded(args.max, cap, "--max")
        return TABLE_HEADERS[obj], [
            [n, k, seq.stirling_subset(n, k), seq.stirling_cycle(n, k)] for n in range(top + 1) for k in range(n + 1)
        ]
    if obj == "cyclotomic":
        top = _bounded(args.max, cap, "--max")
        rows = []
        for n in range(2, top + 1):
            phi = seq.cyclotomic(n)
            rows.append([n, phi.degree, " ".join(format_rational(c) for c in phi.coeffs)])
        return TABLE_HEADERS[obj], rows
    if obj == "gamma":
        top = _bounded(args.max, GAMMA_TAYLOR_MAX, "--max")
        if top < 1:
            raise UsageError("--max must be at least 1")
        return TABLE_HEADERS[obj], [[m, c] for m, c in enumerate(asy.gamma_taylor_coeffs(top))]
    if obj == "partition-asym":
        R = _bounded(args.R, PARTITION_ASYM_MAX, "--R")
        if R < 1:
            raise UsageError("--R must be at least 1")
        C = asy.partition_asym_coeffs(R)
        return TABLE_HEADERS[obj], [[r, str(C.exact[r]), C[r]] for r in range(R)]
    raise UsageError(f"unknown table {obj!r}")


def cmd_table(args) -> int:
    headers, rows = _table_rows(args)
    print(_render(headers, rows, args.format))
    return EXIT_OK


def cmd_seq(args) -> int:
    cap = default_max_n()
    what = args.what
    if what == "tau":
        top = _bounded(args.max if args.max is not None else _need(args.N), cap, "--max")
        values = seq.tau_numbers(top)[1:]
        out = {"tau": values}
        text = " ".join(map(str, values))
    elif what == "partition":
        n = _bounded(_need(args.N), cap * 50, "N")
        out = {"n": n, "p": seq.partitions_p(n)}
        text = str(out["p"])
    elif what == "cyclotomic":
        n = _need(args.N)
        if n < 2:
            raise UsageError("cyclotomic needs N >= 2")
        _bounded(n, cap, "N")
        phi = seq.cyclotomic(n)
        out = {"n": n, "coefficients": [format_rational(c) for c in phi.coeffs]}
        text = str(phi)
    else:
        n = _bounded(_need(args.N), cap, "N")
        b = seq.bernoulli_number(n)
        out = {"n": n, "B": format_rational(b)}
        text = format_rational(b)
    print(_dump(out) if args.json else text)
    return EXIT_OK


def _need(n):
    if n is None:
        raise UsageError("missing N")
    return n


def cmd_asym(args) -> int:
    what = args.what
    if what == "stirling-gamma":
        m = _bounded(_need(args.value), default_max_n(), "M")
        g = asy.stirling_gamma(m, args.route)
        out = {"m": m, "route": args.route, "exact": format_rational(g), "float": float(g)}
        text = format_rational(g)
    elif what == "partition-coeffs":
        R = _bounded(_need(args.value), PARTITION_ASYM_MAX, "R")
        if R < 1:
            raise UsageError("R must be at least 1")
        C = asy.partition_asym_coeffs(R)
        out = C.to_json()
        text = "\n".join(f"C_{r} = {C.exact[r]} ~ {C[r]!r}" for r in range(R))
    else:
        if args.n is None or args.n < 1:
            raise UsageError("validate-I needs --n >= 1")
        if not args.alpha > 0:
            raise UsageError("--alpha must be positive")
        if args.R < 1:
            raise UsageError("--R must be at least 1")
        out = asy.validate_saddle_expansion(args.n, args.alpha, args.R)
        text = "\n".join(f"{k}: {v!r}" if isinstance(v, float) else f"{k}: {v}" for k, v in out.items())
    print(_dump(out) if args.json else text)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="demoivre", description="De Moivre polynomials, identities and tables.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("demoivre", help="symbolic form, value or coefficient gcd of A(n,k)")
    d.add_argument("n", type=int)
    d.add_argument("k", type=int)
    mode = d.add_mutually_exclusive_group()
    mode.add_argument("--symbolic", action="store_true", help="print the polynomial (default)")
    mode.add_argument("--eval", metavar="A1,A2,...", help="evaluate at comma-separated rationals")
    mode.add_argument("--gcd", action="store_true", help="gcd of the coefficients")
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_demoivre)

    c = sub.add_parser("check", help="run identity-check suites")
    c.add_argument("suite", choices=("all",) + checks.SUITES)
    c.add_argument("--max-n", type=int, default=None, help="cap on the sizes used by each suite")
    c.add_argument("--seed", type=int, default=checks.DEFAULT_SEED)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    t = sub.add_parser("table", help="value tables")
    t.add_argument("object", choices=("partition", "tau", "bernoulli", "stirling", "cyclotomic", "gamma", "partition-asym"))
    t.add_argument("--max", type=int, default=10)
    t.add_argument("--R", type=int, default=3)
    t.add_argument("--gamma", action="store_true", help="with stirling: Stirling-series coefficients instead")
    t.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
    t.set_defaults(func=cmd_table)

    s = sub.add_parser("seq", help="single sequence values")
    s.add_argument("what", choices=("tau", "partition", "cyclotomic", "bernoulli"))
    s.add_argument("N", type=int, nargs="?")
    s.add_argument("--max", type=int, default=None)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_seq)

    a = sub.add_parser("asym", help="asymptotic coefficients and validation")
    a.add_argument("what", choices=("stirling-gamma", "partition-coeffs", "validate-I"))
    a.add_argument("value", type=int, nargs="?")
    a.add_argument("--route", choices=tuple(asy.GAMMA_ROUTES), default="perron")
    a.add_argument("--n", type=int, default=None)
    a.add_argument("--alpha", type=float, default=1.0)
    a.add_argument("--R", type=int, default=2)
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_asym)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, BoundExceeded) as exc:
        print(f"demoivre: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"demoivre: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

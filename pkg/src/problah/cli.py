"""Command-line front end.

Subcommands: ``table``, ``poly``, ``verify``, ``dobinski``, ``mc``.
Exit status is 0 on success, 1 when a verification or Monte Carlo band
check fails, and 2 for usage errors such as a malformed spec.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import identities, montecarlo
from .combinatorics import lah_table, stirling2_table
from .distributions import BATTERY, SpecError, spec_from_json, spec_label
from .exact_core import as_rational, format_rational
from .probabilistic import OrderError, ProbLahContext, dobinski_eval

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def load_spec(source: str):
    """Parse a spec given inline as JSON or as a path to a JSON file."""
    text = source.strip()
    if not text.startswith("{"):
        path = Path(source)
        if not path.is_file():
            raise SpecError(f"spec {source!r} is neither inline JSON nor a readable file")
        text = path.read_text()
    return spec_from_json(text)


def _rational_arg(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def _pair_arg(text: str) -> tuple[int, int]:
    try:
        n, k = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected N,K") from None
    return n, k


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _fmt(q) -> str:
    return format_rational(q)


# --- table -----------------------------------------------------------------

def _cmd_table(args, out) -> int:
    if args.classical:
        table = (lah_table if args.classical == "lah" else stirling2_table)(args.n)
        name = args.classical
    else:
        spec = load_spec(args.spec)
        table = ProbLahContext.build(spec, args.n).lah_table
        name = f"L_Y for {spec_label(spec)}"
    rows = [[_fmt(v) for v in row] for row in table.rows()]
    if args.format == "json":
        out.write(json.dumps({"table": name, "rows": rows}) + "\n")
    elif args.format == "csv":
        width = args.n + 1
        header = ["n"] + [str(k) for k in range(width)]
        body = [[str(n)] + row + [""] * (width - len(row)) for n, row in enumerate(rows)]
        out.write(_csv([header] + body))
    else:
        for row in rows:
            out.write(" ".join(row) + "\n")
    return EXIT_OK


# --- poly ------------------------------------------------------------------

def _cmd_poly(args, out) -> int:
    spec = load_spec(args.spec)
    poly = ProbLahContext.build(spec, args.n).poly(args.n)
    coeffs = [_fmt(c) for c in poly.coeffs] or ["0"]
    values = [(x, poly(x)) for x in args.x or ()]
    if args.format == "json":
        doc = {"spec": spec.to_dict(), "n": args.n, "coefficients": coeffs,
               "values": [{"x": _fmt(x), "value": _fmt(v)} for x, v in values]}
        out.write(json.dumps(doc) + "\n")
    elif args.format == "csv":
        if values:
            out.write(_csv([["x", "value"]] + [[_fmt(x), _fmt(v)] for x, v in values]))
        else:
            out.write(_csv([["k", "coefficient"]] + [[k, c] for k, c in enumerate(coeffs)]))
    else:
        out.write(f"B_{args.n}(x) for {spec_label(spec)}: {poly}\n")
        out.write(f"coefficients: {', '.join(coeffs)}\n")
        for x, v in values:
            out.write(f"B_{args.n}({_fmt(x)}) = {_fmt(v)}\n")
    return EXIT_OK


# --- verify ----------------------------------------------------------------

def _witness_text(w: identities.Witness) -> str:
    def show(v):
        if isinstance(v, tuple):
            return "[" + ", ".join(show(c) for c in v) + "]"
        return str(v)
    point = "" if w.point is None else f" at x={show(w.point)}"
    k = "" if w.k is None else f", k={w.k}"
    label = f" ({w.label})" if w.label else ""
    return f"n={w.n}{k}{point}{label}: lhs={show(w.lhs)} rhs={show(w.rhs)}"


def _cmd_verify(args, out) -> int:
    specs = list(BATTERY) if args.battery else [load_spec(args.spec)]
    reports = []
    for spec in specs:
        reports.extend(identities.check_all(spec, args.n_max, perturb=args.perturb))
    if args.format == "json":
        out.write(json.dumps([r.to_dict() for r in reports], sort_keys=True) + "\n")
    elif args.format == "csv":
        rows = [["theorem", "spec", "n_max", "status", "cases", "witness"]]
        for r in reports:
            rows.append([r.theorem_id, spec_label(r.spec), r.n_max, r.status, r.cases,
                         "; ".join(_witness_text(w) for w in r.witnesses)])
        out.write(_csv(rows))
    else:
        for r in reports:
            out.write(f"{r.theorem_id:<6} {spec_label(r.spec):<32} {r.status:<15} cases={r.cases:<6} "
                      f"{identities.DESCRIPTIONS[r.theorem_id]}\n")
            for w in r.witnesses:
                out.write(f"       witness {_witness_text(w)}\n")
    failed = [r for r in reports if r.status == identities.FAIL]
    if failed:
        for r in failed:
            for w in r.witnesses:
                print(f"FAIL {r.theorem_id} {spec_label(r.spec)} {_witness_text(w)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# --- dobinski --------------------------------------------------------------

def _cmd_dobinski(args, out) -> int:
    spec = load_spec(args.spec)
    ctx = ProbLahContext.build(spec, args.n)
    exact_poly = ctx.poly(args.n)
    rows = []
    for x in args.x:
        res = dobinski_eval(ctx, args.n, x, args.tol)
        exact = exact_poly(x)
        err = abs(Fraction(res.value) - exact)
        rows.append((x, res, exact, err))
    if args.format == "json":
        doc = [{"n": args.n, "x": _fmt(x), "value": str(r.value), "terms_used": r.terms_used,
                "exact": _fmt(e), "abs_error": float(err)} for x, r, e, err in rows]
        out.write(json.dumps(doc) + "\n")
    elif args.format == "csv":
        body = [[args.n, _fmt(x), str(r.value), r.terms_used, _fmt(e), repr(float(err))]
                for x, r, e, err in rows]
        out.write(_csv([["n", "x", "value", "terms_used", "exact", "abs_error"]] + body))
    else:
        for x, r, e, err in rows:
            out.write(f"B_{args.n}({_fmt(x)}) ~ {float(r.value)!r} using K={r.terms_used} terms; "
                      f"exact {_fmt(e)}; |error| = {float(err):.3g}\n")
    return EXIT_OK


# --- mc --------------------------------------------------------------------

def _cmd_mc(args, out) -> int:
    specs = list(BATTERY) if args.battery else [load_spec(args.spec)]
    rows = []
    for spec in specs:
        cfg = montecarlo.SimConfig(args.seed, args.samples, spec)
        rows.extend(montecarlo.compare_sum_moments(cfg, args.k_max, args.n_max, args.band))
    if args.format == "json":
        doc = [{"spec": r.spec.to_dict(), "k": r.k, "n": r.n, "exact": _fmt(r.exact),
                "estimate": r.estimate, "stderr": r.stderr, "z": r.z, "verdict": r.verdict}
               for r in rows]
        out.write(json.dumps(doc) + "\n")
    elif args.format == "pretty":
        for r in rows:
            out.write(f"{spec_label(r.spec):<32} k={r.k:<2} n={r.n:<2} exact={_fmt(r.exact):<14} "
                      f"est={r.estimate:<14.8g} se={r.stderr:<10.3g} z={r.z:+.2f} {r.verdict}\n")
    else:
        out.write(montecarlo.comparisons_to_csv(rows))
    return EXIT_OK if montecarlo.all_within(rows) else EXIT_FAIL


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="problah", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p, default="pretty"):
        p.add_argument("--format", choices=("csv", "json", "pretty"), default=default)

    p = sub.add_parser("table", help="print a Lah, Stirling or L_Y triangle")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--classical", choices=("lah", "stirling2"))
    src.add_argument("--spec", help="distribution spec: inline JSON or path to a JSON file")
    p.add_argument("--n", type=int, required=True, help="largest row index")
    fmt(p)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("poly", help="print the coefficients of B_n^{(L,Y)}(x)")
    p.add_argument("--spec", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=_rational_arg, nargs="*", help="exact points at which to evaluate")
    fmt(p)
    p.set_defaults(func=_cmd_poly)

    p = sub.add_parser("verify", help="check every identity; exit 1 on any failure")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--spec")
    src.add_argument("--battery", action="store_true", help="run the built-in seven-distribution battery")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--perturb", type=_pair_arg, default=None, help=argparse.SUPPRESS)
    fmt(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("dobinski", help="evaluate the truncated exponential-mixture series")
    p.add_argument("--spec", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=_rational_arg, nargs="+", default=[Fraction(0), Fraction(1), Fraction(2)])
    p.add_argument("--tol", type=float, default=1e-12, help="per-term stopping tolerance")
    fmt(p)
    p.set_defaults(func=_cmd_dobinski)

    p = sub.add_parser("mc", help="Monte Carlo check of E[<S_k>_n]; exit 1 if any cell is out of band")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--spec")
    src.add_argument("--battery", action="store_true")
    p.add_argument("--k-max", type=int, default=5)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--band", type=float, default=montecarlo.DEFAULT_BAND, help="allowed |z-score|")
    fmt(p, default="csv")
    p.set_defaults(func=_cmd_mc)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args, out)
    except (SpecError, OrderError, ValueError, IndexError, OSError) as exc:
        print(f"problah {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()

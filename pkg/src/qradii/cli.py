"""Command-line front end.

Exit codes: 0 success, 1 invalid arguments or domain, 2 verification
failure, 3 numerical failure (bracket or precision).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass

from qradii import __version__
from qradii.bounds import classical_limit_bounds, comparison_report, theorem_bounds
from qradii.eulerray import (
    CLOSED_FORM_KMAX,
    closed_form_sums,
    newton_sums,
    smallest_positive_root,
    zero_power_sums,
    zero_scan,
)
from qradii.qseries import QDomainError, QDomainParams
from qradii.series import FunctionKind, TruncationError
from qradii.verify import (
    DEFAULT_NUS,
    DEFAULT_QS,
    Tolerances,
    default_grid,
    limit_rows,
    run_verification,
)

EXIT_OK, EXIT_INVALID, EXIT_VERIFY, EXIT_NUMERIC = 0, 1, 2, 3

CSV_HEADER = (
    "kind", "nu", "q", "radius", "lower_k1", "lower_k2", "upper_k2", "upper_k1",
    "residual_series", "residual_theorem", "status",
)


class UsageError(Exception):
    pass


class NumericalFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class OutputRecord:
    kind: str
    nu: float
    q: float
    radius: float
    lower_k1: float
    upper_k1: float
    lower_k2: float
    upper_k2: float
    residual_series: float
    residual_theorem: float
    status: str


def parse_grid(text: str) -> list[float]:
    """``a:b:step`` (inclusive, end snapped within 1e-12), ``a,b,c`` or a single value."""
    text = text.strip()
    try:
        if ":" in text:
            a, b, step = (float(p) for p in text.split(":"))
            if step <= 0 or b < a:
                raise UsageError(f"bad grid {text!r}: need a <= b and step > 0")
            count = int(math.floor((b - a) / step + 1e-12)) + 1
            values = [a + i * step for i in range(count)]
            values = [b if abs(v - b) <= 1e-12 * max(1.0, abs(b)) else round(v, 12) for v in values]
            return values
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"bad grid {text!r}") from None


def parse_kinds(text: str) -> list[FunctionKind]:
    if text.strip().lower() == "all":
        return list(FunctionKind)
    return [FunctionKind.parse(k) for k in text.split(",")]


def parse_verify_grid(text: str):
    if text == "default":
        return default_grid()
    fields = dict(kinds="all", nu=None, q=None)
    for part in text.split(";"):
        key, _, value = part.partition("=")
        key = key.strip().lower()
        if key not in fields or not value:
            raise UsageError(f"bad grid spec {text!r}; expected kinds=...;nu=...;q=...")
        fields[key] = value
    kinds = parse_kinds(fields["kinds"])
    nus = parse_grid(fields["nu"]) if fields["nu"] else DEFAULT_NUS
    qs = parse_grid(fields["q"]) if fields["q"] else DEFAULT_QS
    return default_grid(kinds, nus, qs)


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def radius_record(kind: FunctionKind, nu: float, q: float, tol: float) -> OutputRecord:
    params = QDomainParams(nu, q)
    res = smallest_positive_root(kind, params, tol)
    b = theorem_bounds(kind, params)
    return OutputRecord(
        kind=kind.value, nu=float(nu), q=float(q), radius=res.radius,
        lower_k1=b.lower_k1, upper_k1=b.upper_k1, lower_k2=b.lower_k2, upper_k2=b.upper_k2,
        residual_series=res.residual_series, residual_theorem=res.residual_theorem,
        status=res.status.value,
    )


def render_records(records: list[OutputRecord], fmt: str, single: bool = False) -> str:
    if fmt == "json":
        rows = [{k: _json_value(v) for k, v in asdict(r).items()} for r in records]
        return json.dumps(rows[0] if single else rows, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in records:
            d = asdict(r)
            w.writerow([_fmt(d[h]) for h in CSV_HEADER])
        return buf.getvalue().rstrip("\n")
    return render_table([[_fmt(asdict(r)[h]) for h in CSV_HEADER] for r in records], CSV_HEADER)


def render_table(rows, header) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells)


def render_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([{k: _json_value(v) for k, v in r.items()} for r in rows], indent=2)
    header = list(rows[0]) if rows else []
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_fmt(r[h]) for h in header])
        return buf.getvalue().rstrip("\n")
    return render_table([[_fmt(r[h]) for h in header] for r in rows], header)


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_radius(args) -> int:
    rec = radius_record(args.kind, args.nu, args.q, args.tol)
    _emit(render_records([rec], args.format, single=True), args.output)
    return EXIT_OK if rec.status == "converged" else EXIT_NUMERIC


def cmd_bounds(args) -> int:
    params = QDomainParams(args.nu, args.q)
    b = theorem_bounds(args.kind, params)
    c = classical_limit_bounds(args.kind, args.nu)
    row = {
        "kind": args.kind.value, "nu": float(args.nu), "q": float(args.q),
        "lower_k1": b.lower_k1, "upper_k1": b.upper_k1,
        "lower_k2": b.lower_k2, "upper_k2": b.upper_k2,
        "classical_lower_k1": c.lower_k1, "classical_upper_k1": c.upper_k1,
        "classical_lower_k2": c.lower_k2, "classical_upper_k2": c.upper_k2,
        "status": b.status,
    }
    if args.format == "json":
        _emit(json.dumps(row, indent=2), args.output)
    else:
        _emit(render_rows([row], args.format), args.output)
    return EXIT_OK


def cmd_sums(args) -> int:
    params = QDomainParams(args.nu, args.q)
    if args.kmax < 1:
        raise UsageError("--kmax must be >= 1")
    if args.method == "closed":
        if args.kmax > CLOSED_FORM_KMAX:
            raise UsageError(f"closed forms exist only for k <= {CLOSED_FORM_KMAX}")
        sums = closed_form_sums(args.kind, params)
    elif args.method == "newton":
        sums = newton_sums(args.kind, params, args.kmax)
    else:
        sums = zero_power_sums(zero_scan(args.kind, params, args.zeros), args.kmax)
    rows = [
        {"kind": args.kind.value, "nu": float(args.nu), "q": float(args.q), "method": sums.method,
         "k": k, "value": sums[k]}
        for k in range(1, args.kmax + 1)
    ]
    _emit(render_rows(rows, args.format), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    grid = parse_verify_grid(args.grid)
    report = run_verification(grid, Tolerances(root=args.tol), workers=args.workers)
    text = json.dumps(report.to_dict(), indent=2)
    if args.output:
        _emit(text, args.output)
    print(
        f"verified {len(report.points)} points: {report.passed_count} passed, "
        f"{report.failed_count} failed; limit checks: "
        f"{'ok' if not report.limit_failures else '; '.join(report.limit_failures)}",
        file=sys.stderr if not args.output else sys.stdout,
    )
    for p in report.points:
        if not p.passed:
            print(f"FAIL {p.kind} nu={p.nu} q={p.q}: {'; '.join(p.failures)}")
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_limit(args) -> int:
    rows = []
    for r in limit_rows(args.kind, args.nu, parse_grid(args.q_seq), args.tol):
        rows.append({
            "kind": r.kind, "nu": r.nu, "q": r.q, "radius": r.radius, "scaled": r.scaled,
            "window_lo": r.window_k1[0], "window_hi": r.window_k1[1],
            "window_k2_lo": r.window_k2[0], "window_k2_hi": r.window_k2[1],
            "classical": r.classical, "distance_window": r.distance_window,
        })
    _emit(render_rows(rows, args.format), args.output)
    return EXIT_OK


def cmd_table(args) -> int:
    nus, qs = parse_grid(args.nu_grid), parse_grid(args.q_grid)
    records = []
    for kind in args.kinds:
        for nu in nus:
            for q in qs:
                try:
                    records.append(radius_record(kind, nu, q, args.tol))
                except (QDomainError, TruncationError, ArithmeticError) as exc:
                    nan = math.nan
                    records.append(OutputRecord(kind.value, nu, q, nan, nan, nan, nan, nan, nan, nan,
                                                f"error: {exc}"))
    fmt = args.format
    if args.output and fmt == "text":
        fmt = "json" if args.output.endswith(".json") else "csv"
    _emit(render_records(records, fmt) if records else "", args.output)
    return EXIT_OK


def cmd_compare(args) -> int:
    rows = []
    ok = True
    for nu in parse_grid(args.nu_grid):
        rep = comparison_report(nu)
        ok &= rep.all_true
        for c in rep.rows:
            rows.append({"nu": nu, "claim": c.claim, "left": c.left, "right": c.right, "holds": c.holds})
    _emit(render_rows(rows, args.format), args.output)
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qradii", description="Radii of convexity of normalized q-Bessel functions.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def point(sp, kind=True):
        if kind:
            sp.add_argument("--kind", type=FunctionKind.parse, required=True, help="g2, h2, g3 or h3")
        sp.add_argument("--nu", type=float, required=True)
        sp.add_argument("--q", type=float, required=True)

    def out(sp, fmt="text"):
        sp.add_argument("--format", choices=("text", "json", "csv"), default=fmt)
        sp.add_argument("-o", "--output")

    sp = sub.add_parser("radius", help="radius of convexity and its bounds")
    point(sp)
    sp.add_argument("--tol", type=float, default=1e-12)
    out(sp)
    sp.set_defaults(func=cmd_radius)

    sp = sub.add_parser("bounds", help="explicit bounds and their classical limits")
    point(sp)
    out(sp)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("sums", help="Euler-Rayleigh power sums")
    point(sp)
    sp.add_argument("--kmax", type=int, default=3)
    sp.add_argument("--method", choices=("closed", "newton", "zeros"), default="closed")
    sp.add_argument("--zeros", type=int, default=16, help="zeros summed by --method zeros")
    out(sp)
    sp.set_defaults(func=cmd_sums)

    sp = sub.add_parser("verify", help="run the verification grid")
    sp.add_argument("--grid", default="default", help="'default' or 'kinds=g2,h2;nu=a:b:s;q=a,b'")
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("limit", help="scaled radii as q -> 1")
    sp.add_argument("--kind", type=FunctionKind.parse, required=True)
    sp.add_argument("--nu", type=float, required=True)
    sp.add_argument("--q-seq", default="0.9,0.99,0.999")
    sp.add_argument("--tol", type=float, default=1e-12)
    out(sp)
    sp.set_defaults(func=cmd_limit)

    sp = sub.add_parser("table", help="grid sweep of radius records")
    sp.add_argument("--kind", dest="kinds", type=parse_kinds, default=list(FunctionKind),
                    help="kind, comma list or 'all'")
    sp.add_argument("--nu-grid", required=True)
    sp.add_argument("--q-grid", required=True)
    sp.add_argument("--tol", type=float, default=1e-12)
    out(sp)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("compare", help="ordering of the classical limit windows")
    sp.add_argument("--nu-grid", required=True)
    out(sp)
    sp.set_defaults(func=cmd_compare)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if hasattr(args, "tol") and not args.tol > 0:
            raise UsageError("--tol must be positive")
        return args.func(args)
    except (UsageError, QDomainError) as exc:
        print(f"qradii: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (TruncationError, ArithmeticError, NumericalFailure) as exc:
        print(f"qradii: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

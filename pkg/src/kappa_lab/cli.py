"""Command-line entry point: ``kappa-lab <compute|verify|limits|simulate|table>``.

Exit codes: 0 success, 1 a verified claim failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import bounds, limits, montecarlo, probabilities
from .exceptions import UsageError
from .rounding import DEFAULT_DIGITS, decimal_string, format_rational
from .series import DEFAULT_ORDER

MIN_ORDER = 16
MIN_DIGITS = 20
CSV_DIGITS = 50
WORKERS_ENV = "KAPPA_LAB_WORKERS"

DEFAULT_FORMATS = {
    "compute": "plain",
    "verify": "json",
    "limits": "json",
    "simulate": "json",
    "table": "csv",
}


@dataclass(frozen=True)
class RunConfig:
    N: int = DEFAULT_ORDER
    digits: int = DEFAULT_DIGITS
    fmt: str = "plain"
    workers: int = 1

    def __post_init__(self):
        if self.N < MIN_ORDER:
            raise UsageError(f"--N must be >= {MIN_ORDER}, got {self.N}")
        if self.digits < MIN_DIGITS:
            raise UsageError(f"--digits must be >= {MIN_DIGITS}, got {self.digits}")
        if self.workers < 1:
            raise UsageError(f"--workers must be >= 1, got {self.workers}")


def parse_n_range(text: str) -> list[int]:
    """``"4"``, ``"0..15"`` (inclusive) or ``"3,5,8"``."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
            if lo > hi:
                raise UsageError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse n {text!r}; use 4, 0..15 or 3,5,8") from None


def _resolve_workers(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{WORKERS_ENV} must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# ---------------------------------------------------------------------------
# compute


def _value_row(n, label: str, value: Fraction, method: str, digits: int) -> dict:
    return {
        "n": n,
        "quantity": label,
        "value": format_rational(value),
        "decimal": decimal_string(value, digits),
        "precision": digits,
        "method": method,
    }


def cmd_compute(args, cfg: RunConfig) -> tuple[str, int]:
    ns = parse_n_range(args.n)
    if max(ns) > cfg.N:
        raise UsageError(f"n = {max(ns)} exceeds --N {cfg.N}")
    if min(ns) < 0:
        raise UsageError("n must be >= 0")
    if args.quantity == "s_below" and args.k is None:
        raise UsageError("--quantity s_below needs --k")
    label = probabilities.quantity_label(args.quantity, args.k)
    if args.scale:
        label = f"{args.scale}*{label}"

    terms = []
    for n in ns:
        method = args.method or probabilities.method_of_record(n)
        v = probabilities.compute(args.quantity, n, method, args.k)
        factor = {"n": n, "n2": n * n}.get(args.scale, 1)
        terms.append((n, v * factor, method))

    if args.sum:
        keep = {"odd": 1, "even": 0}.get(args.sum)
        picked = [t for t in terms if keep is None or t[0] % 2 == keep]
        methods = sorted({m for _, _, m in picked})
        total = sum((v for _, v, _ in picked), Fraction(0))
        rows = [_value_row(args.n, f"sum_{args.sum}({label})", total, "+".join(methods), cfg.digits)]
    else:
        rows = [_value_row(n, label, v, m, cfg.digits) for n, v, m in terms]

    if cfg.fmt == "json":
        return _json_text(rows if len(rows) > 1 else rows[0]), 0
    if cfg.fmt == "csv":
        header = ["n", "quantity", "numerator", "denominator", "decimal_50dp", "method"]
        out = []
        for r in rows:
            q = Fraction(r["value"])
            out.append([r["n"], r["quantity"], q.numerator, q.denominator,
                        decimal_string(q, CSV_DIGITS), r["method"]])
        return _csv_text(header, out), 0
    if len(rows) == 1:
        r = rows[0]
        return f"{r['value']}  {r['decimal']}  [{r['method']}]\n", 0
    return "".join(f"n={r['n']}  {r['value']}  {r['decimal']}  [{r['method']}]\n" for r in rows), 0


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args, cfg: RunConfig) -> tuple[str, int]:
    if args.all:
        ids = list(bounds.CLAIM_IDS)
    elif args.claim:
        ids = list(dict.fromkeys(args.claim))
    else:
        raise UsageError("give --claim ID (repeatable) or --all")
    for cid in ids:
        if cid not in bounds.CLAIM_IDS:
            raise UsageError(f"unknown claim {cid!r}; expected one of {', '.join(bounds.CLAIM_IDS)}")
    reports = [bounds.run_claim(cid, args.max_n) for cid in ids]
    bundle = {"all_hold": all(r.holds for r in reports), "reports": [r.to_dict() for r in reports]}
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(_json_text(bundle))
    code = 0 if bundle["all_hold"] else 1
    if cfg.fmt == "json":
        return _json_text(bundle), code
    if cfg.fmt == "csv":
        rows = [
            [d["claim_id"], "PASS" if d["holds"] else "FAIL", d["cells_checked"],
             d["worst_margin"] or "", len(d["counterexamples"])]
            for d in bundle["reports"]
        ]
        return _csv_text(["claim_id", "verdict", "cells_checked", "worst_margin", "counterexamples"], rows), code
    lines = []
    for r, d in zip(reports, bundle["reports"]):
        margin = "" if r.worst_margin is None else f"  worst margin {decimal_string(r.worst_margin, 12)}"
        lines.append(f"{'PASS' if r.holds else 'FAIL'}  {r.claim_id}  ({d['cells_checked']} cells){margin}")
        for c in r.counterexamples[:5]:
            lines.append(f"    counterexample n={c.n} k={c.k} {c.label}: {format_rational(c.lhs)} vs {format_rational(c.rhs)}")
        if len(r.counterexamples) > 5:
            lines.append(f"    ... {len(r.counterexamples) - 5} more")
    return "\n".join(lines) + "\n", code


# ---------------------------------------------------------------------------
# limits


LIMIT_NAMES = {"even": "n2_kappa_alt_even_limit", "odd": "n2_kappa_alt_odd_limit"}


def cmd_limits(args, cfg: RunConfig) -> tuple[str, int]:
    D = cfg.N if args.D is None else args.D
    if D > cfg.N:
        raise UsageError(f"--D {D} exceeds --N {cfg.N}")
    encs = limits.enclose_constants(D, cfg.N)
    alt = limits.alternating_limits(D, cfg.N)
    items = [e.to_dict(name, cfg.digits) for name, e in encs.items()]
    items += [alt[p].to_dict(LIMIT_NAMES[p], cfg.digits) for p in ("even", "odd")]
    if cfg.fmt == "json":
        return _json_text(items), 0
    if cfg.fmt == "csv":
        header = ["constant", "D", "lo", "hi", "width", "decimal_mid"]
        return _csv_text(header, [[d[h] for h in header] for d in items]), 0
    w = max(len(d["constant"]) for d in items)
    lines = []
    for name, e in list(encs.items()) + [(LIMIT_NAMES[p], alt[p]) for p in ("even", "odd")]:
        lines.append(
            f"{name:<{w}}  [{decimal_string(e.lo, 12)}, {decimal_string(e.hi, 12)}]"
            f"  width {decimal_string(e.width, 12)}  mid {decimal_string(e.mid, cfg.digits)}"
        )
    return "\n".join(lines) + "\n", 0


# ---------------------------------------------------------------------------
# simulate


def cmd_simulate(args, cfg: RunConfig) -> tuple[str, int]:
    if args.n > cfg.N:
        raise UsageError(f"n = {args.n} exceeds --N {cfg.N}")
    if args.quantity == "split_half_rate":
        est = montecarlo.split_half_rate(args.n, args.samples, args.seed, cfg.workers)
        exact = Fraction(1, 2)
    else:
        est = montecarlo.estimate(args.quantity, args.n, args.samples, args.seed, args.k, cfg.workers)
        exact = None if est.degenerate else probabilities.compute(args.quantity, args.n, k=args.k)
    if args.batches_csv:
        with open(args.batches_csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(_csv_text(["worker", "batch", "trials", "hits"], [list(b) for b in est.batches]))
    d = est.to_dict()
    if exact is not None:
        d["exact"] = format_rational(exact)
        d["z_score"] = (est.point - float(exact)) / est.std_error if est.std_error else None
    if cfg.fmt == "json":
        return _json_text(d), 0
    if cfg.fmt == "csv":
        header = list(d)
        return _csv_text(header, [["" if d[h] is None else d[h] for h in header]]), 0
    if est.degenerate:
        return f"{est.quantity} n={est.n}: degenerate (no admissible samples)\n", 0
    tail = f"  exact {d['exact']}  z={d['z_score']:+.3f}" if exact is not None and est.std_error else ""
    return f"{est.quantity} n={est.n}: {est.point:.6f} +/- {est.std_error:.6f} ({est.samples} samples){tail}\n", 0


# ---------------------------------------------------------------------------
# table


def cmd_table(args, cfg: RunConfig) -> tuple[str, int]:
    if args.to > cfg.N:
        raise UsageError(f"--to {args.to} exceeds --N {cfg.N}")
    rows = limits.convergence_table(args.from_, args.to, None, cfg.N)
    header = ["n", "parity", "n2_kappa_even", "n2_q_split", "n2_kappa_alt",
              "n2_kappa_alt_decimal", "distance_to_limit_mid"]
    out = [
        [r.n, r.parity, format_rational(r.value_n2_kappaE), format_rational(r.value_n2_Q),
         format_rational(r.value_n2_kappaAlt), decimal_string(r.value_n2_kappaAlt, cfg.digits),
         decimal_string(r.enclosure_mid_distance, cfg.digits)]
        for r in rows
    ]
    if cfg.fmt == "json":
        return _json_text([dict(zip(header, r)) for r in out]), 0
    if cfg.fmt == "plain":
        return "".join(f"n={r[0]:<4} {r[1]:<4} n^2 kappa(A_n) = {decimal_string(rr.value_n2_kappaAlt, 12)}  "
                       f"distance {decimal_string(rr.enclosure_mid_distance, 12)}\n" for r, rr in zip(out, rows)), 0
    return _csv_text(header, out), 0


# ---------------------------------------------------------------------------
# parser


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--N", type=int, default=d(DEFAULT_ORDER), help="truncation order (>= 16)")
    parser.add_argument("--digits", type=int, default=d(DEFAULT_DIGITS), help="decimal places (>= 20)")
    parser.add_argument("--format", choices=("json", "csv", "plain"), default=d(None))
    parser.add_argument("--workers", type=int, default=d(None),
                        help=f"worker processes (fallback ${WORKERS_ENV}, then CPU count)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kappa-lab",
        description="Exact conjugacy probabilities in symmetric and alternating groups.",
    )
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)

    p = sub.add_parser("compute", parents=[common], help="exact values of one quantity")
    p.add_argument("--quantity", required=True, choices=probabilities.QUANTITIES)
    p.add_argument("--n", required=True, help="4, 0..15 or 3,5,8")
    p.add_argument("--k", type=int)
    p.add_argument("--scale", choices=("n", "n2"), help="multiply by n or n^2")
    p.add_argument("--sum", choices=("odd", "even", "all"), help="sum over n of the given parity")
    p.add_argument("--method", choices=(probabilities.ENUMERATION, probabilities.GENERATING_FUNCTION))
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", parents=[common], help="check numeric claims exactly")
    p.add_argument("--claim", action="append", metavar="ID", help=", ".join(bounds.CLAIM_IDS))
    p.add_argument("--all", action="store_true")
    p.add_argument("--max-n", type=int, dest="max_n")
    p.add_argument("--output", help="also write the JSON report bundle here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("limits", parents=[common], help="enclosures of the limit constants")
    p.add_argument("--D", type=int, help="terms summed exactly (default --N)")
    p.set_defaults(func=cmd_limits)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo estimate")
    p.add_argument("--quantity", required=True, choices=montecarlo.QUANTITIES + ("split_half_rate",))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int)
    p.add_argument("--batches-csv", dest="batches_csv", help="write per-batch tallies here")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("table", parents=[common], help="convergence table of n^2 kappa(A_n)")
    p.add_argument("--from", dest="from_", type=int, default=2)
    p.add_argument("--to", type=int, default=60)
    p.set_defaults(func=cmd_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            N=args.N,
            digits=args.digits,
            fmt=args.format or DEFAULT_FORMATS[args.command],
            workers=_resolve_workers(args.workers),
        )
        text, code = args.func(args, cfg)
    except UsageError as exc:
        print(f"kappa-lab {args.command}: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

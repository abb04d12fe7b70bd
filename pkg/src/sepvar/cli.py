"""Command-line front end.

Every subcommand emits either a human-readable text report or a JSON
document with two top-level keys: "certificates" (the mathematical
payload, serialized with sorted keys so runs are byte-comparable) and
"run" (timings and plumbing).  Exit codes: 0 success, 2 usage, 3 budget
exhausted, 4 a mathematical assertion failed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Optional

from .basic import (
    binomial_sum,
    curve_construct,
    curve_verify,
    decompose,
    lemma_b_value,
)
from .cases import df5_verify, f6_verify
from .errors import AlgebraError, ParseError, ShapeError
from .groebner import Budget, GBTimeout, dump_ideal, eliminate, load_ideal
from .poly import GrevLex, Lex

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_TIMEOUT = 3
EXIT_MATH = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sepvar",
        description="exact separating-variety computations for additive group actions",
    )
    parser.add_argument("--timeout", type=float, default=900.0, help="budget in seconds")
    parser.add_argument("--order", choices=["lex", "grevlex"], default="grevlex")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--seed", type=int, default=0, help="recorded in every report")
    parser.add_argument("--max-n", type=int, default=8, dest="max_n")
    parser.add_argument("--threads", type=int, default=1,
                        help="recorded in run metadata; the engine is single-threaded")
    parser.add_argument("-o", "--output", default=None, help="write the report to a file")
    sub = parser.add_subparsers(dest="command", required=True)

    p_basic = sub.add_parser("basic", help="decompose the separating variety of the n-th action")
    p_basic.add_argument("n", type=int)

    p_lemma = sub.add_parser("lemma", help="inverse-factorial quadratic form values")
    p_lemma.add_argument("--max-m", type=int, default=6, dest="max_m")

    p_curve = sub.add_parser("curve", help="witness curve through an endpoint pair")
    p_curve.add_argument("n", type=int)
    p_curve.add_argument("--a", required=True, help="comma-separated rationals, length n+1")
    p_curve.add_argument("--b", required=True, help="comma-separated rationals, length n+1")

    p_case = sub.add_parser("case", help="run a named case study")
    p_case.add_argument("name", choices=["df5", "f6"])

    p_gb = sub.add_parser("gb", help="reduced basis of an ideal file")
    p_gb.add_argument("file")
    p_gb.add_argument("--eliminate", default=None,
                      help="comma-separated variables to eliminate first")
    return parser


def _parse_vector(text: str, length: int, label: str) -> list[Fraction]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != length:
        raise ValueError("%s needs %d entries, got %d" % (label, length, len(parts)))
    try:
        return [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError("%s: %s" % (label, exc))


def _render_text(value, indent: int = 0, out=None) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                out.append("%s%s:" % (pad, k))
                _render_text(v, indent + 1, out)
            else:
                out.append("%s%s: %s" % (pad, k, v if not isinstance(v, (dict, list)) else "[]"))
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)):
                out.append("%s-" % pad)
                _render_text(item, indent + 1, out)
            else:
                out.append("%s- %s" % (pad, item))
    else:
        out.append("%s%s" % (pad, value))


def _emit(args, certificates: dict, run: dict) -> None:
    if args.format == "json":
        doc = {"certificates": certificates, "run": run}
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    else:
        lines: list[str] = []
        _render_text(certificates, 0, lines)
        lines.append("run:")
        _render_text(run, 1, lines)
        text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run_meta(args, started: float, timings: Optional[dict] = None) -> dict:
    meta = {
        "timings": {"total_seconds": round(time.perf_counter() - started, 3)},
        "threads": args.threads,
        "timeout": args.timeout,
    }
    if timings:
        meta["timings"].update(timings)
    return meta


def cmd_basic(args, parser) -> int:
    if args.n < 1 or args.n > args.max_n:
        parser.error("n must satisfy 1 <= n <= %d (see --max-n), got %d" % (args.max_n, args.n))
    started = time.perf_counter()
    budget = Budget(seconds=args.timeout)
    report = decompose(args.n, budget=budget)
    payload = {"command": "basic", "n": args.n, "seed": args.seed}
    payload.update(report.as_dict())
    _emit(args, payload, _run_meta(args, started))
    if report.graph_status != "computed":
        return EXIT_TIMEOUT
    return EXIT_OK


def cmd_lemma(args, parser) -> int:
    if args.max_m < 1:
        parser.error("--max-m must be at least 1")
    started = time.perf_counter()
    rows = []
    for m in range(1, args.max_m + 1):
        value = lemma_b_value(m)
        expected = 1 - (-1) ** m
        rows.append({
            "m": m,
            "value": str(value),
            "expected": str(expected),
            "ok": value == expected,
        })
    sweep_fail = []
    checked = 0
    for p in range(0, 13):
        for q in range(0, p + 1):
            for r in range(0, 13):
                lhs, rhs = binomial_sum(p, q, r)
                checked += 1
                if lhs != rhs:
                    sweep_fail.append({"p": p, "q": q, "r": r, "lhs": str(lhs), "rhs": str(rhs)})
    payload = {
        "command": "lemma",
        "seed": args.seed,
        "rows": rows,
        "binomial_sweep": {"checked": checked, "failures": sweep_fail},
        "ok": all(r["ok"] for r in rows) and not sweep_fail,
    }
    _emit(args, payload, _run_meta(args, started))
    return EXIT_OK if payload["ok"] else EXIT_MATH


def cmd_curve(args, parser) -> int:
    if args.n < 1:
        parser.error("n must be at least 1")
    started = time.perf_counter()
    try:
        a = _parse_vector(args.a, args.n + 1, "--a")
        b = _parse_vector(args.b, args.n + 1, "--b")
    except ValueError as exc:
        parser.error(str(exc))
    curve = curve_construct(args.n, a, b)
    report = curve_verify(curve)
    payload = {
        "command": "curve",
        "n": args.n,
        "seed": args.seed,
        "a": [str(c) for c in a],
        "b": [str(c) for c in b],
        "curve": curve.as_dict(),
        "verification": report.as_dict(),
    }
    _emit(args, payload, _run_meta(args, started))
    return EXIT_OK if report.ok else EXIT_MATH


def cmd_case(args, parser) -> int:
    started = time.perf_counter()
    budget = Budget(seconds=args.timeout)
    report = df5_verify(budget) if args.name == "df5" else f6_verify(budget)
    payload = {"command": "case", "seed": args.seed}
    payload.update(report.as_dict())
    _emit(args, payload, _run_meta(args, started))
    if report.status != "complete":
        return EXIT_TIMEOUT
    return EXIT_OK if report.ok else EXIT_MATH


def cmd_gb(args, parser) -> int:
    started = time.perf_counter()
    budget = Budget(seconds=args.timeout)
    try:
        ideal = load_ideal(args.file)
    except OSError as exc:
        parser.error(str(exc))
    except ParseError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    if args.eliminate:
        names = [nm.strip() for nm in args.eliminate.split(",") if nm.strip()]
        for nm in names:
            if nm not in ideal.ring.names:
                parser.error("cannot eliminate %r: not a variable of the ideal" % nm)
        result = eliminate(ideal, names, budget=budget)
        if isinstance(result, GBTimeout):
            print("elimination unresolved within budget", file=sys.stderr)
            return EXIT_TIMEOUT
        ideal = result
    order = Lex() if args.order == "lex" else GrevLex()
    gb = ideal.groebner(order, budget=budget)
    if isinstance(gb, GBTimeout):
        print("basis computation unresolved within budget", file=sys.stderr)
        return EXIT_TIMEOUT
    from .groebner import Ideal as _Ideal

    basis_ideal = _Ideal(ideal.ring, gb.polys)
    text = dump_ideal(basis_ideal)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.format == "json":
        doc = {
            "certificates": {
                "command": "gb",
                "seed": args.seed,
                "basis": [str(g) for g in gb.polys],
                "stats": gb.stats.as_dict(),
            },
            "run": _run_meta(args, started),
        }
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.timeout <= 0:
        parser.error("--timeout must be positive")
    handlers = {
        "basic": cmd_basic,
        "lemma": cmd_lemma,
        "curve": cmd_curve,
        "case": cmd_case,
        "gb": cmd_gb,
    }
    try:
        return handlers[args.command](args, parser)
    except ShapeError as exc:
        print("shape error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except (AlgebraError, AssertionError) as exc:
        print("mathematical check failed: %s" % exc, file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())

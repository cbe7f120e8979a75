"""Command-line entry point.

Subcommands expose the library operations behind deterministic reports:
`basis`, `mul`, `pair`, `gram`, `verify-ck`, `verify-mck`, `lemma-ok`,
`gamma3`, `euler`, `kimura`, `scan`.  Exit codes: 0 all checks pass,
1 a mathematical check failed, 2 usage or structural error, 3 resource
limit reached.  With --no-timing the reports are byte-identical across
runs.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .algebra import ModelParams, class_codim, enumerate_basis, multiply
from .calculus import gram, pair, pullback
from .grammar import ParseError, format_class, parse_class
from .kimura import (
    DEFAULT_B_CAP,
    DEFAULT_GRAM_CAP,
    ResourceLimitError,
    scan_injectivity,
    verify_kimura_vanishing,
)
from .motives import (
    ck_projectors,
    euler_char,
    expand_diagonal_times_h,
    solve_gamma3,
    verify_ck,
    verify_mck,
)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Profile:
    """Resolved parameter profile; named profiles pin n and d."""

    name: str
    n: int
    d: int
    b: int
    delta: Fraction | None = None

    def to_params(self) -> ModelParams:
        return ModelParams(n=self.n, d=self.d, b=self.b, delta=self.delta)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--profile",
        choices=["three-quadrics", "double-plane", "custom"],
        default="custom",
    )
    common.add_argument("--n", type=int)
    common.add_argument("--d", type=int)
    common.add_argument("--b", type=int)
    common.add_argument("--delta", help="loop value override, as p or p/q (test-only)")
    common.add_argument("--format", choices=["json", "csv", "text"], default="text")
    common.add_argument("--no-timing", action="store_true")

    parser = argparse.ArgumentParser(prog="tautring", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", parents=[common], help="enumerate a monomial basis")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--codim", type=int, required=True)

    for name, helptext in (("mul", "multiply two classes"), ("pair", "intersection pairing")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("x")
        p.add_argument("y")
        p.add_argument("--m", type=int)
        p.add_argument(
            "--normalize-input", action=argparse.BooleanOptionalAction, default=True
        )

    p = sub.add_parser("gram", parents=[common], help="Gram matrix rank and kernel")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--codim", type=int, required=True)

    sub.add_parser("verify-ck", parents=[common], help="projector axioms")
    sub.add_parser("verify-mck", parents=[common], help="multiplicativity of the projectors")
    sub.add_parser("lemma-ok", parents=[common], help="diagonal-times-h expansion")
    sub.add_parser("gamma3", parents=[common], help="modified small diagonal solve")
    sub.add_parser("euler", parents=[common], help="Euler characteristic identity")

    p = sub.add_parser("kimura", parents=[common], help="alternating relation vanishing")
    p.add_argument("--cap-b", type=int, default=DEFAULT_B_CAP)
    p.add_argument("--cap-gram", type=int, default=DEFAULT_GRAM_CAP)

    p = sub.add_parser("scan", parents=[common], help="injectivity scan of Gram deficiencies")
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--cap-gram", type=int, default=DEFAULT_GRAM_CAP)

    return parser


def _resolve_params(args: argparse.Namespace) -> ModelParams:
    n, d, b = args.n, args.d, args.b
    if args.profile == "three-quadrics":
        if d not in (None, 8):
            raise UsageError("profile three-quadrics fixes d = 8")
        d = 8
        if n is None:
            raise UsageError("profile three-quadrics requires --n")
    elif args.profile == "double-plane":
        if n not in (None, 2):
            raise UsageError("profile double-plane fixes n = 2")
        if d not in (None, 2):
            raise UsageError("profile double-plane fixes d = 2")
        n, d = 2, 2
    else:
        if n is None or d is None:
            raise UsageError("profile custom requires --n and --d")
    if b is None:
        raise UsageError("--b is required (no default Betti number is assumed)")
    delta = Fraction(args.delta) if args.delta is not None else None
    return Profile(name=args.profile, n=n, d=d, b=b, delta=delta).to_params()


def _cmd_basis(args, params):
    basis = enumerate_basis(params, args.m, args.codim)
    inputs = {"m": args.m, "codim": args.codim}
    results = {"count": len(basis), "monomials": [mono.canonical_str() for mono in basis]}
    return "pass", inputs, results


def _parse_operands(args, params):
    x = parse_class(args.x, params, m=args.m, normalize=args.normalize_input)
    y = parse_class(args.y, params, m=args.m, normalize=args.normalize_input)
    m = max(x.m, y.m)
    if x.m < m:
        x = pullback(x, m, tuple(range(1, x.m + 1)))
    if y.m < m:
        y = pullback(y, m, tuple(range(1, y.m + 1)))
    return x, y


def _cmd_mul(args, params):
    x, y = _parse_operands(args, params)
    product = multiply(x, y, params)
    try:
        codim = class_codim(product, params)
    except ValueError:
        codim = None
    inputs = {"x": args.x, "y": args.y, "m": x.m}
    results = {
        "product": format_class(product, params),
        "codim": codim,
    }
    return "pass", inputs, results


def _cmd_pair(args, params):
    x, y = _parse_operands(args, params)
    value = pair(x, y, params)
    inputs = {"x": args.x, "y": args.y, "m": x.m}
    results = {"value": str(value)}
    return "pass", inputs, results


def _cmd_gram(args, params):
    report = gram(params, args.m, args.codim)
    inputs = {"m": args.m, "codim": args.codim}
    results = {
        "basis_size": len(report.basis),
        "dual_size": len(report.dual_basis),
        "rank": report.rank,
        "deficiency": len(report.kernel_basis),
        "basis": [mono.canonical_str() for mono in report.basis],
        "kernel": [format_class(cls, params) for cls in report.kernel_basis],
    }
    return "pass", inputs, results


def _cmd_verify_ck(args, params):
    report = verify_ck(ck_projectors(params))
    results = {
        "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in report.checks],
        "passed": report.passed,
    }
    return ("pass" if report.passed else "fail"), {}, results


def _cmd_verify_mck(args, params):
    report = verify_mck(params)
    results = {
        "cases": [
            {
                "i": c.i,
                "j": c.j,
                "k": c.k,
                "required_zero": c.required_zero,
                "zero": c.is_zero,
                "ok": c.ok,
                "detail": c.detail,
            }
            for c in report.cases
        ],
        "partition": [{"name": p.name, "ok": p.ok, "detail": p.detail} for p in report.partition],
        "passed": report.passed,
    }
    return ("pass" if report.passed else "fail"), {}, results


def _cmd_lemma_ok(args, params):
    checks = []
    passed = True
    for factor in (1, 2):
        try:
            product = expand_diagonal_times_h(params, factor)
            checks.append(
                {"factor": factor, "equal": True, "class": format_class(product, params)}
            )
        except ArithmeticError as exc:
            checks.append({"factor": factor, "equal": False, "class": str(exc)})
            passed = False
    results = {"checks": checks, "passed": passed}
    return ("pass" if passed else "fail"), {}, results


def _cmd_gamma3(args, params):
    solution = solve_gamma3(params)
    symmetric = True
    for (i, j, k), value in solution.coefficients.items():
        for perm in ((i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)):
            if solution.coefficients.get(perm) != value:
                symmetric = False
    residual_zero = solution.residual.is_zero
    results = {
        "coefficients": {
            f"{i},{j},{k}": str(v) for (i, j, k), v in sorted(solution.coefficients.items())
        },
        "residual": format_class(solution.residual, params),
        "residual_zero": residual_zero,
        "symmetric": symmetric,
    }
    passed = residual_zero and symmetric
    return ("pass" if passed else "fail"), {}, results


def _cmd_euler(args, params):
    value = euler_char(params)
    expected = Fraction(params.n + params.b)
    results = {"value": str(value), "expected": str(expected), "match": value == expected}
    return ("pass" if value == expected else "fail"), {}, results


def _cmd_kimura(args, params):
    report = verify_kimura_vanishing(params, cap_b=args.cap_b, cap_gram=args.cap_gram)
    inputs = {"cap_b": args.cap_b, "cap_gram": args.cap_gram}
    results = {
        "b": report.b,
        "delta": str(report.delta),
        "vanishing": report.vanishing,
        "crosscheck_ok": report.crosscheck_ok,
        "dual_count": report.dual_count,
    }
    return ("pass" if report.passed else "fail"), inputs, results


def _scan_rows_payload(table) -> list[dict]:
    return [
        {
            "m": row.m,
            "codim": row.codim,
            "basis_size": row.basis_size,
            "rank": row.rank,
            "deficiency": row.deficiency,
        }
        for row in table.rows
    ]


def _cmd_scan(args, params):
    table = scan_injectivity(params, args.m_max, cap_gram=args.cap_gram)
    inputs = {"m_max": args.m_max, "cap_gram": args.cap_gram}
    results = {"rows": _scan_rows_payload(table)}
    return "pass", inputs, results


_HANDLERS = {
    "basis": _cmd_basis,
    "mul": _cmd_mul,
    "pair": _cmd_pair,
    "gram": _cmd_gram,
    "verify-ck": _cmd_verify_ck,
    "verify-mck": _cmd_verify_mck,
    "lemma-ok": _cmd_lemma_ok,
    "gamma3": _cmd_gamma3,
    "euler": _cmd_euler,
    "kimura": _cmd_kimura,
    "scan": _cmd_scan,
}


def _inputs_from_args(args) -> dict:
    inputs = {}
    for key in ("m", "codim", "m_max", "cap_b", "cap_gram", "x", "y"):
        if hasattr(args, key) and getattr(args, key) is not None:
            inputs[key] = getattr(args, key)
    return inputs


def _report_dict(command, params, inputs, results, status, timing_ms):
    report = {
        "command": command,
        "params": {
            "n": params.n,
            "d": params.d,
            "b": params.b,
            "delta": str(params.delta),
        },
        "inputs": inputs,
        "results": results,
        "status": status,
    }
    if timing_ms is not None:
        report["timing_ms"] = timing_ms
    return report


def _tabular(command: str, results: dict) -> tuple[list[str], list[list]]:
    if command == "basis":
        return ["monomial"], [[m] for m in results["monomials"]]
    if command == "mul":
        return ["product", "codim"], [[results["product"], results["codim"]]]
    if command == "pair":
        return ["value"], [[results["value"]]]
    if command == "gram":
        return (
            ["basis_size", "dual_size", "rank", "deficiency"],
            [[results["basis_size"], results["dual_size"], results["rank"], results["deficiency"]]],
        )
    if command in ("verify-ck",):
        return ["name", "ok", "detail"], [[c["name"], c["ok"], c["detail"]] for c in results["checks"]]
    if command == "verify-mck":
        return (
            ["i", "j", "k", "required_zero", "zero", "ok"],
            [
                [c["i"], c["j"], c["k"], c["required_zero"], c["zero"], c["ok"]]
                for c in results["cases"]
            ],
        )
    if command == "lemma-ok":
        return ["factor", "equal"], [[c["factor"], c["equal"]] for c in results["checks"]]
    if command == "gamma3":
        return (
            ["i", "j", "k", "coefficient"],
            [key.split(",") + [value] for key, value in sorted(results["coefficients"].items())],
        )
    if command == "euler":
        return ["value", "expected", "match"], [
            [results["value"], results["expected"], results["match"]]
        ]
    if command == "kimura":
        return (
            ["b", "delta", "vanishing", "crosscheck_ok", "dual_count"],
            [
                [
                    results["b"],
                    results["delta"],
                    results["vanishing"],
                    results["crosscheck_ok"],
                    results["dual_count"],
                ]
            ],
        )
    if command == "scan":
        return (
            ["m", "codim", "basis_size", "rank", "deficiency"],
            [
                [r["m"], r["codim"], r["basis_size"], r["rank"], r["deficiency"]]
                for r in results.get("rows", [])
            ],
        )
    return ["key", "value"], [[k, v] for k, v in results.items()]


def _render_text(report: dict) -> str:
    lines = [f"command: {report['command']}"]
    params = report["params"]
    lines.append(
        f"params: n={params['n']} d={params['d']} b={params['b']} delta={params['delta']}"
    )
    if report["inputs"]:
        lines.append(
            "inputs: " + " ".join(f"{k}={v}" for k, v in report["inputs"].items())
        )
    headers, rows = _tabular(report["command"], report["results"])
    lines.append("  ".join(headers))
    for row in rows:
        lines.append("  ".join(str(v) for v in row))
    if "error" in report["results"]:
        lines.append(f"error: {report['results']['error']}")
    lines.append(f"status: {report['status']}")
    if "timing_ms" in report:
        lines.append(f"timing_ms: {report['timing_ms']}")
    return "\n".join(lines) + "\n"


def _render_csv(report: dict) -> str:
    headers, rows = _tabular(report["command"], report["results"])
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(headers)
    for row in rows:
        writer.writerow(row)
    return out.getvalue()


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    elif fmt == "csv":
        sys.stdout.write(_render_csv(report))
    else:
        sys.stdout.write(_render_text(report))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (None, 0) else 2
    try:
        params = _resolve_params(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    handler = _HANDLERS[args.command]
    start = time.perf_counter()
    try:
        status, inputs, results = handler(args, params)
    except ResourceLimitError as exc:
        results = {"error": str(exc)}
        if exc.partial is not None:
            results["rows"] = _scan_rows_payload(exc.partial)
        timing = None if args.no_timing else round((time.perf_counter() - start) * 1000, 3)
        report = _report_dict(args.command, params, _inputs_from_args(args), results, "error", timing)
        _emit(report, args.format)
        return 3
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    timing = None if args.no_timing else round((time.perf_counter() - start) * 1000, 3)
    report = _report_dict(args.command, params, inputs, results, status, timing)
    _emit(report, args.format)
    return 0 if status == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

    algindep check <jobfile>
    algindep jacobian <jobfile>
    algindep eval <series> [params...] --prec N
    algindep case list
    algindep case run <id> [--prec N] [--poly FILE ...]

Exit codes: 0 report produced (Inconclusive included), 2 parse or validation
error, 3 precision or budget failure, 4 internal error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from typing import Callable, Sequence

from . import __version__
from .casebook import list_cases, run_case
from .criterion import check, job_matrix
from .errors import (
    ArithmeticDomainError,
    ParseError,
    PrecisionError,
    StructuralError,
    UndecidedError,
    ValidationError,
)
from .jacobian import determinant
from .parse import format_canonical, parse_job
from .series import (
    elementary,
    elliptic_E,
    elliptic_K,
    exp_fib_series,
    exp_residue,
    modulus_parameters,
    q_series,
    ramanujan,
    theta,
    zeta_fib,
)

EXIT_OK, EXIT_INPUT, EXIT_PRECISION, EXIT_INTERNAL = 0, 2, 3, 4
DEFAULT_PREC = 128
DEFAULT_BUDGET = 64


class UsageError(ValidationError):
    pass


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message, "argv")


def _int(text: str, name: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ValidationError(f"{name} must be an integer (got {text!r})", name) from None


def _rational(text: str, name: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"{name} must be a rational number such as 1/3 or 0.25 (got {text!r})", name) from None


def _arity(params: list[str], names: Sequence[str], series: str):
    if len(params) != len(names):
        usage = " ".join(n.upper() for n in names)
        raise ValidationError(f"usage: eval {series} {usage}".rstrip(), "params")


def _eval_zeta_fib(p, prec):
    _arity(p, ["two_s"], "zeta_fib")
    return {"zeta_fib": zeta_fib(_int(p[0], "two_s"), prec)}


def _eval_q_series(p, prec):
    _arity(p, ["family", "order", "q"], "q_series")
    return {"q_series": q_series(p[0], _int(p[1], "order"), _rational(p[2], "q"), prec)}


def _eval_ramanujan(p, prec):
    _arity(p, ["which", "q"], "ramanujan")
    return {p[0]: ramanujan(p[0], _rational(p[1], "q"), prec)}


def _eval_theta(p, prec):
    _arity(p, ["q"], "theta")
    return {"theta": theta(_rational(p[0], "q"), prec)}


def _eval_exp_residue(p, prec):
    _arity(p, ["q_mod", "r", "z"], "exp_residue")
    return {"exp_residue": exp_residue(_int(p[0], "q_mod"), _int(p[1], "r"), _rational(p[2], "z"), prec)}


def _eval_exp_fib(p, prec):
    if not p:
        raise ValidationError("usage: eval exp_fib KIND PARAMS... Z", "params")
    kind = p[0]
    want = 1 if kind in ("f_s", "g_s") else 2
    if len(p) != want + 2:
        raise ValidationError(f"usage: eval exp_fib {kind} {'S' if want == 1 else 'A B'} Z", "params")
    params = tuple(_int(x, "params") for x in p[1 : 1 + want])
    return {kind: exp_fib_series(kind, params, _rational(p[-1], "z"), prec)}


def _eval_elliptic(which):
    fn = elliptic_K if which == "K" else elliptic_E

    def run(p, prec):
        _arity(p, ["k"], f"elliptic_{which}")
        return {f"elliptic_{which}": fn(_rational(p[0], "k"), prec)}

    return run


def _eval_modulus(p, prec):
    _arity(p, [], "modulus")
    out = modulus_parameters(prec)
    return {"k": out["k"], "2K/pi": out["x1"], "2E/pi": out["x2"]}


def _eval_elementary(kind):
    def run(p, prec):
        if kind == "pi":
            _arity(p, [], kind)
            return {kind: elementary(kind, None, prec)}
        _arity(p, ["x"], kind)
        return {kind: elementary(kind, _rational(p[0], "x"), prec)}

    return run


SERIES: dict[str, Callable] = {
    "zeta_fib": _eval_zeta_fib,
    "q_series": _eval_q_series,
    "ramanujan": _eval_ramanujan,
    "theta": _eval_theta,
    "exp_residue": _eval_exp_residue,
    "exp_fib": _eval_exp_fib,
    "elliptic_K": _eval_elliptic("K"),
    "elliptic_E": _eval_elliptic("E"),
    "modulus": _eval_modulus,
    "pi": _eval_elementary("pi"),
    "ln": _eval_elementary("ln"),
    "sqrt": _eval_elementary("sqrt"),
    "exp": _eval_elementary("exp"),
}


def _read(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror or exc}", "path") from None


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _finish(env: dict, started: float, seed: int, prec: int) -> dict:
    env["timing_ms"] = round((time.perf_counter() - started) * 1000, 3)
    env["seed"] = seed
    env["precision_bits"] = prec
    return env


# subcommands --------------------------------------------------------------


def cmd_check(args, started):
    job = parse_job(_read(args.jobfile))
    seed = args.seed if args.seed is not None else (job.seed if job.seed is not None else 0)
    if args.prec is not None:
        job.precision = args.prec
    cert = check(job, seed=seed, budget=args.budget)
    d = cert.to_dict()
    env = {
        "version": __version__,
        "job_digest": d["job_digest"],
        "verdict": d["verdict"],
        "over_field": d["over_field"],
        "theorem": d["theorem"],
        "evidence": d["evidence"],
        "assumptions": d["assumptions"],
        "notes": d["notes"],
    }
    env = _finish(env, started, seed, job.precision)
    lines = [
        f"verdict: {d['verdict']} over {d['over_field']} ({d['theorem']})",
        f"job digest: {d['job_digest']}",
        f"evidence: {d['evidence']['kind']}",
    ]
    for key in ("determinant", "witness", "witness_value", "enclosure"):
        if key in d["evidence"]:
            lines.append(f"  {key}: {_human(d['evidence'][key])}")
    lines.append("assumptions:")
    lines.extend(f"  - {a['text']} [{a['source']}]" for a in d["assumptions"])
    lines.extend(f"note: {n}" for n in d["notes"])
    return env, lines


def _human(v) -> str:
    if isinstance(v, dict) and "approx" in v:
        return f"{v['approx']} +/- {v['rad_approx']}"
    if isinstance(v, dict):
        return ", ".join(f"{k} = {x}" for k, x in v.items())
    return str(v)


def cmd_jacobian(args, started):
    job = parse_job(_read(args.jobfile))
    mat = job_matrix(job)
    det = determinant(mat)
    rows = mat.to_strings()
    env = {
        "version": __version__,
        "job_digest": job.digest(),
        "mode": job.mode,
        "matrix": rows,
        "determinant": format_canonical(det),
    }
    seed = args.seed if args.seed is not None else (job.seed or 0)
    env = _finish(env, started, seed, job.precision)
    lines = [f"mode: {job.mode}", f"job digest: {env['job_digest']}", "matrix:"]
    lines.extend("  [" + ", ".join(r) + "]" for r in rows)
    lines.append(f"determinant: {env['determinant']}")
    return env, lines


def cmd_eval(args, started):
    if args.series not in SERIES:
        raise ValidationError(
            f"unknown series {args.series!r}; choose from {', '.join(sorted(SERIES))}", "series"
        )
    prec = args.prec or DEFAULT_PREC
    values = SERIES[args.series](list(args.params), prec)
    request = " ".join(["eval", args.series, *args.params, f"prec={prec}"])
    env = {
        "version": __version__,
        "job_digest": _digest(request),
        "series": args.series,
        "params": list(args.params),
        "results": {k: v.to_json() for k, v in values.items()},
    }
    env = _finish(env, started, args.seed or 0, prec)
    lines = [f"{k} = {v.to_decimal_string(40)} +/- {float(v.rad):.3e}" for k, v in values.items()]
    return env, lines


def cmd_case_list(args, started):
    cases = list_cases()
    env = {
        "version": __version__,
        "cases": [
            {"id": c.id, "title": c.title, "anchor": c.paper_anchor, "required_inputs": c.required_inputs}
            for c in cases
        ],
    }
    lines = [f"{c.id:24s} {c.title}" for c in cases]
    return env, lines


def cmd_case_run(args, started):
    prec = args.prec or DEFAULT_PREC
    seed = args.seed or 0
    polys = [_read(p).decode("utf-8", errors="strict") for p in (args.poly or [])]
    report = run_case(args.id, prec, seed=seed, budget=args.budget, polys=polys or None)
    request = "\n".join(["case", args.id, f"prec={prec}", f"seed={seed}", *polys])
    d = report.to_dict()
    env = {"version": __version__, "job_digest": _digest(request)}
    env.update(d)
    if report.verdicts:
        first = report.verdicts[0].to_dict()
        for key in ("verdict", "over_field", "theorem", "evidence", "assumptions"):
            env[key] = first[key]
    env = _finish(env, started, seed, prec)
    lines = [f"case {report.case_id}: {report.status}"]
    for k, v in report.values.items():
        lines.append(f"  {k} = {v.to_decimal_string(30)} +/- {float(v.rad):.3e}")
    for k, (digits, ok) in report.golden.items():
        lines.append(f"  golden {k} {digits}: {'matched' if ok else 'NOT matched'}")
    for k, v in report.residuals.items():
        lines.append(f"  residual {k}: {v} ({'encloses 0' if v.contains_zero() else 'EXCLUDES 0'})")
    for c, e in zip(report.verdicts, report.expected):
        lines.append(f"  verdict: {c.conclusion} over {c.verdict.over_field} ({c.verdict.theorem_used}); expected {e}")
    lines.extend(f"  note: {n}" for n in report.notes)
    return env, lines


# parser and dispatch ------------------------------------------------------


def _common(parser: argparse.ArgumentParser, suppress: bool):
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--json", action="store_true", default=d if suppress else False, help="machine-readable output")
    parser.add_argument("--seed", type=int, default=d, help="seed for randomized zero testing")
    parser.add_argument(
        "--budget", type=int, default=d if suppress else DEFAULT_BUDGET, help="zero-test sample budget (default 64)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgParser(prog="algindep", description="Jacobian criteria for algebraic independence")
    parser.add_argument("--version", action="version", version=f"algindep {__version__}")
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    p = sub.add_parser("check", help="run the criterion named by the job's mode")
    p.add_argument("jobfile")
    p.add_argument("--prec", type=int, default=None, help="override the job's precision (bits)")
    _common(p, suppress=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("jacobian", help="print the symbolic Jacobian and its determinant")
    p.add_argument("jobfile")
    _common(p, suppress=True)
    p.set_defaults(func=cmd_jacobian)

    p = sub.add_parser("eval", help="certified evaluation of a special value")
    p.add_argument("series", help=", ".join(SERIES))
    p.add_argument("params", nargs="*")
    p.add_argument("--prec", type=int, default=None)
    _common(p, suppress=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("case", help="built-in case studies")
    case_sub = p.add_subparsers(dest="case_command", required=True, parser_class=_ArgParser)
    c = case_sub.add_parser("list")
    _common(c, suppress=True)
    c.set_defaults(func=cmd_case_list)
    c = case_sub.add_parser("run")
    c.add_argument("id")
    c.add_argument("--prec", type=int, default=None)
    c.add_argument("--poly", action="append", metavar="FILE", help="polynomial file (repeat for f1, f2)")
    _common(c, suppress=True)
    c.set_defaults(func=cmd_case_run)
    return parser


def _error_payload(exc: BaseException, code: int) -> dict:
    err = {"type": type(exc).__name__, "message": str(exc)}
    field = getattr(exc, "field", None)
    if field is not None:
        err["field"] = field
    if isinstance(exc, ParseError):
        err.update(line=exc.line, column=exc.column, token=exc.token)
    return {"version": __version__, "error": err, "exit_code": code}


def _classify(exc: BaseException) -> int:
    if isinstance(exc, (PrecisionError, UndecidedError)):
        return EXIT_PRECISION
    if isinstance(exc, (ValidationError, StructuralError, ArithmeticDomainError, UnicodeDecodeError)):
        return EXIT_INPUT
    return EXIT_INTERNAL


def _wants_json(argv: Sequence[str]) -> bool:
    return "--json" in argv


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    err = err or sys.stderr
    as_json = _wants_json(argv)
    started = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "prec", None) is not None and args.prec < 8:
            raise ValidationError("--prec must be at least 8 bits", "prec")
        if args.budget < 0:
            raise ValidationError("--budget must be non-negative", "budget")
        env, lines = args.func(args, started)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except Exception as exc:  # noqa: BLE001 - every failure maps to an exit code
        code = _classify(exc)
        if as_json:
            out.write(json.dumps(_error_payload(exc, code), indent=2) + "\n")
        else:
            label = "internal error" if code == EXIT_INTERNAL else "error"
            err.write(f"algindep: {label}: {exc}\n")
        return code
    if as_json:
        out.write(json.dumps(env, indent=2) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

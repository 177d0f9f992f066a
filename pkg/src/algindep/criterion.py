"""The four Jacobian decision procedures and their certificates.

Every verdict is conditional on the algebraic independence of the input
values ``x_1, ..., x_n``; that hypothesis is recorded as an
:class:`AssumptionRecord` and never checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InconsistentPointError, ValidationError
from .exact import Enclosure, Polynomial, RationalFunction
from .jacobian import (
    SymbolicMatrix,
    cleared_jacobian,
    determinant,
    jacobian_implicit,
    jacobian_of_map,
)
from .parse import AssumptionRecord, JobSpec, format_canonical
from .zerotest import NONZERO, ZeroTestResult, det_zero_status, matrix_value_at

INDEPENDENT = "Independent"
DEPENDENT = "Dependent"
INCONCLUSIVE = "Inconclusive"

RETRY_WIDTH = Fraction(1, 2**16)
_TRUNCATE = 400


@dataclass(frozen=True)
class Verdict:
    conclusion: str
    over_field: str
    theorem_used: str


@dataclass
class Certificate:
    verdict: Verdict
    evidence: dict
    assumptions: list[AssumptionRecord]
    inputs_digest: str
    notes: list[str] = field(default_factory=list)

    @property
    def conclusion(self) -> str:
        return self.verdict.conclusion

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.conclusion,
            "over_field": self.verdict.over_field,
            "theorem": self.verdict.theorem_used,
            "evidence": self.evidence,
            "assumptions": [{"text": a.text, "source": a.source} for a in self.assumptions],
            "job_digest": self.inputs_digest,
            "notes": list(self.notes),
        }


def _truncated(obj) -> str:
    s = format_canonical(obj)
    if len(s) > _TRUNCATE:
        return s[:_TRUNCATE] + f"... ({len(s)} chars)"
    return s


def _hypothesis(job: JobSpec) -> list[AssumptionRecord]:
    names = ", ".join(job.x_vars)
    base = AssumptionRecord(
        f"the values of {names} are algebraically independent over Q",
        "hypothesis of the Jacobian transfer criterion (not verified)",
    )
    out = [base]
    out.extend(a for a in job.assumptions if a != base)
    return out


def _witness_evidence(mat: SymbolicMatrix, zt: ZeroTestResult) -> dict:
    det = zt.determinant if zt.determinant is not None else determinant(mat)
    return {
        "kind": "witness",
        "determinant": _truncated(det),
        "witness": {k: str(v) for k, v in zt.witness.items()},
        "witness_value": str(zt.witness_value),
        "samples": zt.effort.samples,
        "redraws": zt.effort.redraws,
        "symbolic_expansion": zt.effort.symbolic,
    }


def _zero_evidence(mat: SymbolicMatrix, zt: ZeroTestResult) -> dict:
    return {
        "kind": "zero-expansion",
        "determinant": "0",
        "matrix": mat.to_strings(),
        "samples": zt.effort.samples,
        "symbolic_expansion": True,
    }


def _seed(job: JobSpec, seed: int | None) -> int:
    if seed is not None:
        return seed
    return job.seed if job.seed is not None else 0


def _require(job: JobSpec, mode: str):
    if job.mode != mode:
        raise ValidationError(f"job mode is {job.mode!r}, expected {mode!r}", "mode")


def check_polynomial_map(job: JobSpec, *, seed: int | None = None, budget: int = 64) -> Certificate:
    """Polynomial map ``y = T(x)``: nonzero Jacobian <=> independence (never Inconclusive)."""
    if job.mode not in ("polynomial_map", "rational_map"):
        _require(job, "polynomial_map")
    rhs = [e.as_polynomial() if isinstance(e, RationalFunction) else e for e in job.equations]
    mat = jacobian_of_map(rhs, job.x_vars)
    zt = det_zero_status(mat, _seed(job, seed), budget)
    if zt.status == NONZERO:
        verdict = Verdict(INDEPENDENT, "Q", "T2")
        evidence = _witness_evidence(mat, zt)
    else:
        verdict = Verdict(DEPENDENT, "Q", "T2")
        evidence = _zero_evidence(mat, zt)
    return Certificate(verdict, evidence, _hypothesis(job), job.digest())


def check_rational_map(job: JobSpec, *, seed: int | None = None, budget: int = 64) -> Certificate:
    """Rational map ``y = T/U``: zero-test the cleared Jacobian; zero gives Inconclusive."""
    _require(job, "rational_map")
    rfs = [RationalFunction.coerce(e, job.x_vars) for e in job.equations]
    for k, r in enumerate(rfs):
        if r.den.is_zero():
            raise ValidationError(f"denominator of equations[{k}] is identically zero", f"equations[{k}]")
    if all(r.is_polynomial() for r in rfs):
        cert = check_polynomial_map(job, seed=seed, budget=budget)
        cert.notes.append("all right-hand sides are polynomials; decided as a polynomial map")
        return cert
    cj = cleared_jacobian(rfs, job.x_vars)
    mat = cj.matrix()
    zt = det_zero_status(mat, _seed(job, seed), budget)
    if zt.status == NONZERO:
        verdict = Verdict(INDEPENDENT, "Q", "T3")
        evidence = _witness_evidence(mat, zt)
        evidence["cleared"] = True
        evidence["denominators"] = [format_canonical(u) for u in cj.denominators]
    else:
        verdict = Verdict(INCONCLUSIVE, "Q", "T3")
        evidence = _zero_evidence(mat, zt)
        evidence["cleared"] = True
    return Certificate(verdict, evidence, _hypothesis(job), job.digest())


def residuals(job: JobSpec, prec: int) -> list[Enclosure]:
    return [f.eval_enclosure(job.point, prec) for f in job.equations]


def _check_residuals(job: JobSpec, prec: int) -> list[Enclosure]:
    res = residuals(job, prec)
    for j, r in enumerate(res):
        if r.excludes_zero():
            raise InconsistentPointError(
                f"equations not satisfied at point: residual of equations[{j}] is {r}", f"equations[{j}]"
            )
    return res


def _interval_decision(job: JobSpec, det: Polynomial, theorem: str, over_field: str) -> Certificate:
    prec = job.precision
    res = _check_residuals(job, prec)
    enc = det.eval_enclosure(job.point, prec)
    widths = [str(enc.width)]
    notes = []
    if enc.contains_zero() and 0 < enc.width < RETRY_WIDTH:
        prec *= 2
        enc = det.eval_enclosure(job.point, prec)
        widths.append(str(enc.width))
        notes.append(f"retried at {prec} bits")
    evidence = {
        "kind": "interval",
        "determinant": _truncated(det),
        "enclosure": enc.to_json(),
        "widths": widths,
        "precision_bits": prec,
        "residuals": [r.to_json() for r in res],
    }
    conclusion = INDEPENDENT if enc.excludes_zero() else INCONCLUSIVE
    if conclusion == INCONCLUSIVE:
        notes.append(f"determinant enclosure contains 0 (width {float(enc.width):.3e})")
    return Certificate(Verdict(conclusion, over_field, theorem), evidence, _hypothesis(job), job.digest(), notes)


def check_implicit(job: JobSpec) -> Certificate:
    """Implicit system ``f(x, y) = 0``: certified determinant enclosure at the point."""
    _require(job, "implicit")
    mat = jacobian_implicit(job.equations, job.x_vars)
    det = determinant(mat).as_polynomial()
    return _interval_decision(job, det, "T1", "Q")


def partial_matrix(job: JobSpec) -> SymbolicMatrix:
    return jacobian_implicit(job.equations, job.x_vars[: job.m])


def check_partial(job: JobSpec) -> Certificate:
    """``m < n`` equations: the leading ``m x m`` Jacobian minor decides independence
    over ``Q(x_{m+1}, ..., x_n)``."""
    _require(job, "partial")
    if job.m is None or not 1 <= job.m < job.n:
        raise ValidationError("partial mode needs 1 <= m < n", "m")
    det = determinant(partial_matrix(job)).as_polynomial()
    field_name = f"Q({', '.join(job.x_vars[job.m:])})"
    return _interval_decision(job, det, "T4", field_name)


def check(job: JobSpec, *, seed: int | None = None, budget: int = 64) -> Certificate:
    if job.mode == "polynomial_map":
        return check_polynomial_map(job, seed=seed, budget=budget)
    if job.mode == "rational_map":
        return check_rational_map(job, seed=seed, budget=budget)
    if job.mode == "implicit":
        return check_implicit(job)
    if job.mode == "partial":
        return check_partial(job)
    raise ValidationError(f"unknown mode {job.mode!r}", "mode")


def job_matrix(job: JobSpec) -> SymbolicMatrix:
    """The matrix whose determinant the criterion inspects for this job."""
    if job.mode == "polynomial_map":
        return jacobian_of_map(job.equations, job.x_vars)
    if job.mode == "rational_map":
        return jacobian_of_map(job.equations, job.x_vars)
    if job.mode == "implicit":
        return jacobian_implicit(job.equations, job.x_vars)
    return partial_matrix(job)


def verify_certificate(cert: Certificate, job: JobSpec) -> bool:
    """Independent re-check of the evidence behind a certificate."""
    ev = cert.evidence
    if cert.verdict.conclusion == DEPENDENT and cert.verdict.theorem_used != "T2":
        return False
    if ev["kind"] == "witness":
        if job.mode == "rational_map" and ev.get("cleared"):
            mat = cleared_jacobian(job.equations, job.x_vars).matrix()
        else:
            mat = jacobian_of_map(
                [e.as_polynomial() if isinstance(e, RationalFunction) else e for e in job.equations],
                job.x_vars,
            )
        point = {k: Fraction(v) for k, v in ev["witness"].items()}
        value = matrix_value_at(mat, point)
        return value is not None and value != 0 and str(value) == ev["witness_value"]
    if ev["kind"] == "zero-expansion":
        if job.mode == "rational_map":
            mat = cleared_jacobian(job.equations, job.x_vars).matrix()
        else:
            mat = job_matrix(job)
        return determinant(mat, "bareiss").is_zero()
    if ev["kind"] == "interval":
        det = determinant(job_matrix(job), "bareiss").as_polynomial()
        enc = det.eval_enclosure(job.point, ev["precision_bits"])
        return enc.excludes_zero() == (cert.verdict.conclusion == INDEPENDENT)
    return False

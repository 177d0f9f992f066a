import json

import pytest

from algindep.criterion import (
    DEPENDENT,
    INCONCLUSIVE,
    INDEPENDENT,
    check,
    check_implicit,
    check_partial,
    check_polynomial_map,
    check_rational_map,
    verify_certificate,
)
from algindep.errors import InconsistentPointError, ValidationError
from algindep.parse import parse_job
from algindep.series import sqrt


def job(mode, equations, x_vars=("X1", "X2"), **kw):
    doc = {"mode": mode, "x_vars": list(x_vars), "equations": equations, "seed": 1}
    doc.update(kw)
    return parse_job(json.dumps(doc))


def point_of(**values):
    return {k: {"mid": str(v.mid), "rad": str(v.rad)} for k, v in values.items()}


@pytest.mark.parametrize(
    "eqs, expected",
    [
        (["X1", "X2"], INDEPENDENT),
        (["X1 + X2", "X1*X2"], INDEPENDENT),
        (["X1 + X2", "(X1 + X2)^2"], DEPENDENT),
        (["X2", "X2 + 120*X2^2"], DEPENDENT),
        (["X1^3 - X2", "X2^5 + 7"], INDEPENDENT),
    ],
)
def test_polynomial_map_verdicts(eqs, expected):
    j = job("polynomial_map", eqs)
    cert = check_polynomial_map(j)
    assert cert.conclusion == expected
    assert cert.verdict.theorem_used == "T2" and cert.verdict.over_field == "Q"
    assert verify_certificate(cert, j)


def test_dependent_evidence_is_zero_expansion():
    cert = check(job("polynomial_map", ["X2", "X2 + 120*X2^2"]))
    assert cert.evidence["kind"] == "zero-expansion"
    assert cert.evidence["determinant"] == "0"


def test_hypothesis_recorded_first():
    j = job("polynomial_map", ["X1", "X2"], assumptions=["e is transcendental"])
    cert = check(j)
    assert "algebraically independent" in cert.assumptions[0].text
    assert cert.assumptions[1].text == "e is transcendental"
    assert cert.inputs_digest == j.digest()


def test_rational_map_inconclusive_and_independent():
    j = job("rational_map", ["X1/X2", "X2/X1"])
    cert = check_rational_map(j)
    assert cert.conclusion == INCONCLUSIVE and cert.verdict.theorem_used == "T3"
    assert verify_certificate(cert, j)
    j = job("rational_map", ["X1/X2", "X1 + X2"])
    cert = check_rational_map(j)
    assert cert.conclusion == INDEPENDENT and cert.verdict.theorem_used == "T3"
    assert verify_certificate(cert, j)


def test_rational_map_never_dependent_for_true_fractions():
    for eqs in (["X1/X2", "X1^2/X2^2"], ["1/(X1 + X2)", "X1 + X2"]):
        cert = check(job("rational_map", eqs))
        assert cert.conclusion == INCONCLUSIVE


def test_polynomial_entries_in_rational_mode_use_polynomial_criterion():
    cert = check(job("rational_map", ["X1 + X2", "(X1 + X2)^2"]))
    assert cert.conclusion == DEPENDENT and cert.verdict.theorem_used == "T2"
    assert cert.notes


def sqrt2_point(y_value):
    r2 = sqrt(2, 128)
    return point_of(X1=r2) | {"Y1": y_value}


def test_implicit_independent():
    j = job("implicit", ["Y1 - X1^2"], x_vars=["X1"], y_vars=["Y1"], point=sqrt2_point("2"))
    cert = check_implicit(j)
    assert cert.conclusion == INDEPENDENT and cert.verdict.theorem_used == "T1"
    assert cert.evidence["kind"] == "interval"
    assert verify_certificate(cert, j)


def test_implicit_inconclusive_when_determinant_vanishes_at_point():
    j = job(
        "implicit",
        ["Y1*X1 - X1 + Y1 - 1"],
        x_vars=["X1"],
        y_vars=["Y1"],
        point={"X1": "0.5", "Y1": {"mid": "1", "rad": "0"}},
    )
    cert = check_implicit(j)
    assert cert.conclusion == INCONCLUSIVE
    assert verify_certificate(cert, j)


def test_implicit_retry_at_doubled_precision_recorded():
    j = job(
        "implicit",
        ["Y1*X1 - X1 + Y1 - 1"],
        x_vars=["X1"],
        y_vars=["Y1"],
        point={"X1": "0.5", "Y1": {"mid": "1", "rad": "1/1000000000000"}},
    )
    cert = check_implicit(j)
    assert cert.conclusion == INCONCLUSIVE
    assert any("retried" in n for n in cert.notes)


def test_inconsistent_point_rejected():
    j = job("implicit", ["Y1 - X1^2"], x_vars=["X1"], y_vars=["Y1"], point={"X1": "1.000", "Y1": "5.000"})
    with pytest.raises(InconsistentPointError, match="equations not satisfied at point"):
        check(j)


def test_partial_over_extension_field():
    r2 = sqrt(2, 128)
    y = (r2 * 3).rounded(128)
    j = job(
        "partial",
        ["Y1 - X1*X2"],
        x_vars=["X1", "X2"],
        y_vars=["Y1"],
        m=1,
        point=point_of(X1=r2, Y1=y) | {"X2": {"mid": "3", "rad": "0"}},
    )
    cert = check_partial(j)
    assert cert.conclusion == INDEPENDENT
    assert cert.verdict.theorem_used == "T4" and cert.verdict.over_field == "Q(X2)"
    assert verify_certificate(cert, j)


def test_mode_mismatch():
    with pytest.raises(ValidationError):
        check_implicit(job("polynomial_map", ["X1", "X2"]))


def test_deterministic_certificates():
    j = job("polynomial_map", ["X1 + X2", "X1*X2"])
    assert check(j, seed=5).to_dict() == check(j, seed=5).to_dict()


def test_tampered_certificate_fails_verification():
    j = job("polynomial_map", ["X1 + X2", "X1*X2"])
    cert = check(j)
    cert.evidence["witness_value"] = "12345"
    assert not verify_certificate(cert, j)

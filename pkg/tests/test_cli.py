import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from algindep.cli import main

JOBS = Path(__file__).resolve().parent.parent / "jobs"
VERDICTS = {"Independent", "Dependent", "Inconclusive"}
REPORT_KEYS = {"version", "job_digest", "verdict", "over_field", "theorem", "evidence", "assumptions",
               "timing_ms", "seed", "precision_bits"}


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, _ = run(*argv, "--json")
    return code, json.loads(out)


def test_check_elem_sym_json():
    code, doc = run_json("check", str(JOBS / "elem-sym.job"))
    assert code == 0
    assert REPORT_KEYS <= set(doc)
    assert (doc["verdict"], doc["theorem"]) == ("Independent", "T2")
    assert doc["evidence"]["determinant"] == "X1 - X2"


@pytest.mark.parametrize(
    "name, verdict, theorem",
    [
        ("a7-a3.job", "Dependent", "T2"),
        ("rational.job", "Inconclusive", "T3"),
        ("implicit-sqrt2.job", "Independent", "T1"),
        ("partial.job", "Independent", "T4"),
    ],
)
def test_sample_jobs(name, verdict, theorem):
    code, doc = run_json("check", str(JOBS / name))
    assert code == 0 and doc["verdict"] == verdict and doc["theorem"] == theorem
    assert doc["verdict"] in VERDICTS


def test_human_output_has_same_verdict():
    code, out, _ = run("check", str(JOBS / "elem-sym.job"))
    assert code == 0 and "verdict: Independent over Q (T2)" in out


def test_malformed_job_positioned_error():
    code, out, err = run("check", str(JOBS / "malformed.job"))
    assert code == 2 and "line 1, column 6" in err and out == ""
    code, doc = run_json("check", str(JOBS / "malformed.job"))
    assert code == 2
    assert doc["error"]["type"] == "ParseError"
    assert (doc["error"]["line"], doc["error"]["column"]) == (1, 6)


def test_missing_file_and_bad_usage_exit_2(tmp_path):
    assert run("check", str(tmp_path / "absent.job"))[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("eval", "zeta_fib", "3")[0] == 2
    assert run("eval", "theta", "2")[0] == 2
    assert run("eval", "zeta_fib", "4", "--prec", "2")[0] == 2
    code, doc = run_json("eval", "nope")
    assert code == 2 and doc["exit_code"] == 2


def test_precision_failure_exit_3(monkeypatch):
    from algindep import cli
    from algindep.errors import PrecisionError

    def boom(p, prec):
        raise PrecisionError("ceiling reached")

    monkeypatch.setitem(cli.SERIES, "modulus", boom)
    code, doc = run_json("eval", "modulus")
    assert code == 3 and doc["error"]["type"] == "PrecisionError"


def test_zero_budget_still_decides(tmp_path):
    job = tmp_path / "j.job"
    job.write_text(json.dumps({"mode": "polynomial_map", "x_vars": ["X1"], "equations": ["X1"]}))
    code, doc = run_json("check", str(job), "--budget", "0")
    assert code == 0 and doc["evidence"]["symbolic_expansion"] is True


def test_undecided_maps_to_exit_3(monkeypatch):
    from algindep import cli
    from algindep.errors import UndecidedError

    def boom(job, seed=None, budget=64):
        raise UndecidedError("budget exhausted")

    monkeypatch.setattr(cli, "check", boom)
    assert run("check", str(JOBS / "elem-sym.job"))[0] == 3


def test_internal_error_exit_4(monkeypatch):
    from algindep import cli

    def boom(p, prec):
        raise RuntimeError("unexpected")

    monkeypatch.setitem(cli.SERIES, "pi", boom)
    code, out, err = run("eval", "pi")
    assert code == 4 and "internal error" in err


def test_jacobian_subcommand():
    code, doc = run_json("jacobian", str(JOBS / "elem-sym.job"))
    assert code == 0
    assert doc["matrix"] == [["1", "1"], ["X2", "X1"]]
    assert doc["determinant"] == "X1 - X2"


def test_eval_outputs():
    code, doc = run_json("eval", "zeta_fib", "4", "--prec", "96")
    assert code == 0 and doc["precision_bits"] == 96
    assert doc["results"]["zeta_fib"]["approx"].startswith("2.07673085")
    for argv in (("q_series", "A", "3", "1/3"), ("ramanujan", "P", "1/4"), ("theta", "1/2"),
                 ("exp_residue", "3", "1", "1"), ("exp_fib", "f_ab", "2", "1", "1/2"), ("exp_fib", "g_s", "2", "1"),
                 ("elliptic_K", "1/2"), ("elliptic_E", "1/2"), ("pi",), ("ln", "2"), ("sqrt", "2"), ("exp", "-1")):
        code, doc = run_json("eval", *argv, "--prec", "64")
        assert code == 0, argv
        assert doc["results"]


def test_case_list_and_run():
    code, doc = run_json("case", "list")
    assert code == 0 and doc["cases"][0]["id"] == "fib-zeta-elliptic"
    code, doc = run_json("case", "run", "fib-zeta-elliptic", "--prec", "96")
    assert code == 0
    assert doc["status"] == "needs-input"
    assert all(g["matched"] for g in doc["golden"].values())
    code, doc = run_json("case", "run", "elementary-symmetric")
    assert code == 0 and doc["verdict"] == "Independent" and doc["status"] == "pass"


def test_case_run_with_poly_files(tmp_path):
    f1 = tmp_path / "f1.txt"
    f2 = tmp_path / "f2.txt"
    f1.write_text("Y1 - X1")
    f2.write_text("Y2 - X2")
    code, doc = run_json("case", "run", "fib-zeta-elliptic", "--prec", "64", "--poly", str(f1), "--poly", str(f2))
    assert code == 0 and doc["status"] == "fail"


def strip_timing(text):
    doc = json.loads(text)
    doc.pop("timing_ms", None)
    return json.dumps(doc, indent=2)


@pytest.mark.parametrize(
    "argv",
    [
        ("check", str(JOBS / "elem-sym.job"), "--seed", "9"),
        ("check", str(JOBS / "implicit-sqrt2.job")),
        ("eval", "modulus", "--prec", "64"),
        ("case", "run", "a7-a3-relation", "--prec", "64"),
    ],
)
def test_byte_identical_apart_from_timing(argv):
    a = run(*argv, "--json")[1]
    b = run(*argv, "--json")[1]
    assert strip_timing(a) == strip_timing(b)
    json.loads(a)


def test_global_flags_before_subcommand():
    code, out, _ = run("--json", "--seed", "4", "check", str(JOBS / "elem-sym.job"))
    doc = json.loads(out)
    assert code == 0 and doc["seed"] == 4


def test_seed_changes_witness_not_verdict():
    a = run_json("check", str(JOBS / "elem-sym.job"), "--seed", "1")[1]
    b = run_json("check", str(JOBS / "elem-sym.job"), "--seed", "2")[1]
    assert a["verdict"] == b["verdict"]
    assert a["evidence"]["witness"] != b["evidence"]["witness"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "algindep", "check", str(JOBS / "elem-sym.job"), "--json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"] == "Independent"

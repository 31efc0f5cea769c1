import json

import pytest

from branchforge import __version__
from branchforge.cli import Report, RunConfig, main, run
from branchforge.errors import UsageError


def _json(capsys, argv):
    status = main(argv + ["--json"])
    return status, json.loads(capsys.readouterr().out)


def test_semigroup_report(capsys):
    status, rep = _json(capsys, ["semigroup", "--gens", "4,6,13"])
    assert status == 0
    sg = rep["results"]["semigroup"]
    assert (sg["delta"], sg["conductor"]) == (8, 16)
    assert sg["gaps"] == [1, 2, 3, 5, 7, 9, 11, 15]
    assert rep["version"] == __version__
    assert rep["input"]["semigroup"] == "4,6,13"
    assert set(rep) >= {"tool", "version", "input", "results", "verdicts", "timing"}


@pytest.mark.parametrize("flag,value", [("--puiseux", "4;6,7"), ("--puiseux", "(4; 6, 7)"),
                                        ("--gens", "(4; 6, 7)")])
def test_puiseux_input(capsys, flag, value):
    status, rep = _json(capsys, ["semigroup", flag, value])
    assert rep["results"]["semigroup"]["generators"] == [4, 6, 13]


def test_json_file_input(capsys, tmp_path):
    path = tmp_path / "in.json"
    path.write_text('{"puiseux": {"mult": 4, "exponents": [6, 7]}}')
    status, rep = _json(capsys, ["curve", "--input", str(path)])
    assert status == 0
    assert rep["results"]["text"] == ["u1^2 - u0^3", "u2^2 - u0^2*u1^3"]
    assert rep["results"]["infinity"]["point"] == [1, 1, 1, 0]


def test_deform_weights(capsys):
    status, rep = _json(capsys, ["deform", "--semigroup", "2,3"])
    assert status == 0
    assert [p["weight"] for p in rep["results"]["family"]["parameters"]] == [6, 4]


def test_deform_projective(capsys):
    status, rep = _json(capsys, ["deform", "--semigroup", "4,6,13", "--projective"])
    assert status == 0
    flagged = {f["parameter"] for f in rep["results"]["projective"]["flagged"]}
    assert flagged == set(rep["results"]["family"]["tau_minus"])


def test_count_report(capsys):
    status, rep = _json(capsys, ["count", "--semigroup", "3,4", "--q", "2,3,5,7",
                                 "--stratify", "--oracle", "naive"])
    assert status == 0
    r = rep["results"]
    assert r["counts"] == {"2": 19, "3": 49, "5": 181, "7": 449}
    assert r["polynomial"] == [1, 1, 2, 1]
    assert [s["exponent"] for s in r["strata"]] == [3, 2, 2, 1, 0]
    assert all(rep["verdicts"][k] for k in ("integer_coefficients", "monic_degree_delta"))
    assert rep["verdicts"]["naive_oracle"] == {"2": True, "3": True, "5": "skipped", "7": "skipped"}


def test_count_too_few_fields(capsys):
    status, rep = _json(capsys, ["count", "--semigroup", "3,4", "--q", "2,3"])
    assert status == 0
    assert rep["verdicts"] == {"purity": "skipped"}
    assert rep["results"]["counts"] == {"2": 19, "3": 49}


def test_exit_codes(capsys):
    assert main(["count", "--semigroup", "2,3", "--q", "13"]) == 3
    assert main(["count", "--semigroup", "2,3", "--q", "2,2"]) == 2
    assert main(["bogus"]) == 2
    assert main(["semigroup"]) == 2
    assert main(["semigroup", "--gens", "4,6,11"]) == 1
    assert main(["semigroup", "--gens", "4,6"]) == 1
    capsys.readouterr()


def test_error_code_in_report(capsys):
    status, rep = _json(capsys, ["curve", "--gens", "4,6,11"])
    assert status == 1
    assert rep["error"]["code"] == "invalid-plane-branch"


def test_budget_flag(capsys):
    status, rep = _json(capsys, ["count", "--semigroup", "2,3", "--q", "13,17", "--budget", "q=17"])
    assert status == 0
    assert rep["results"]["counts"] == {"13": 14, "17": 18}


def test_out_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["semigroup", "--gens", "2,3", "--json", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["results"]["semigroup"]["delta"] == 1


def test_text_output(capsys):
    assert main(["semigroup", "--gens", "3,4"]) == 0
    out = capsys.readouterr().out
    assert "delta = 3, conductor = 6" in out
    assert "gaps: 1, 2, 5" in out


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig("deform", semigroup="2,3", puiseux="2;3").validate()
    rep = run(RunConfig("count", semigroup="2,3", fields=(2, 3, 3)))
    assert rep.error["code"] == "usage" and rep.exit_status == 2


def test_report_exit_status():
    assert Report("x", {}, {}, {"a": True, "b": "skipped"}).exit_status == 0
    assert Report("x", {}, {}, {"a": {"b": False}}).exit_status == 1


def test_verify_is_deterministic_across_threads():
    a = run(RunConfig("verify", threads=1))
    b = run(RunConfig("verify", threads=3))
    assert a.exit_status == b.exit_status == 0
    assert a.to_json(timing=False) == b.to_json(timing=False)

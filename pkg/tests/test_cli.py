"""CLI contract: subcommands, formats, exit codes, determinism."""

import json

import pytest

from diskdiam.cli import main

from conftest import SPECS_DIR

IDENTITY = str(SPECS_DIR / "identity.json")
LFT = str(SPECS_DIR / "extremal_lft.json")
CUBIC = str(SPECS_DIR / "cubic_monomial.json")


def run_json(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip().startswith("{") else out


def test_eval_json(capsys):
    code, doc = run_json(capsys, "eval", "--input", IDENTITY, "--z", "0.3,0.4",
                         "--no-timestamp")
    assert code == 0
    assert doc["rows"][0]["f"] == [0.3, 0.4]
    assert doc["rows"][0]["df"] == [1.0, 0.0]


def test_eval_csv(capsys):
    code = main(["eval", "--input", IDENTITY, "--z", "0.5", "--format", "csv"])
    out = capsys.readouterr().out
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "z_re,z_im,f_re,f_im,df_re,df_im"
    assert lines[1].startswith("0.5,0.0,0.5,0.0,1.0")


def test_diameter_ratio_csv(capsys):
    code = main(["diameter", "--input", CUBIC, "--r-grid", "0.2:0.8:4",
                 "--format", "csv"])
    out = capsys.readouterr().out
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "r,ratio_lower,ratio_upper"
    row = lines[1].split(",")
    r, lo, hi = float(row[0]), float(row[1]), float(row[2])
    assert lo <= 2 * r * r <= hi  # D_r/r = 2 r^2 for the cubic monomial


def test_diameter_single_radius(capsys):
    code, doc = run_json(capsys, "diameter", "--input", IDENTITY, "--r", "0.5",
                         "--no-timestamp")
    assert code == 0
    assert doc["lower"] <= 1.0 <= doc["upper"]


def test_bounds_growth_equality(capsys):
    code, doc = run_json(capsys, "bounds", "--check", "growth", "--input", LFT,
                         "--z", "0.8", "--no-timestamp")
    assert code == 0
    rep = doc["reports"][0]
    assert rep["equality"] is True
    assert rep["verdict"] == "pass"


def test_bounds_classify(capsys):
    code, doc = run_json(capsys, "bounds", "--check", "classify", "--input", LFT,
                         "--no-timestamp")
    assert code == 0
    assert doc["label"] == "extremal-lft"


def test_density_summary(capsys):
    code, doc = run_json(capsys, "density", "--input", IDENTITY, "--no-timestamp")
    assert code == 0
    assert doc["Lambda"] == pytest.approx(1.0, abs=1e-9)
    assert doc["R_h"] == pytest.approx(1.0, abs=1e-6)


def test_density_csv_header(capsys):
    code = main(["density", "--input", IDENTITY, "--format", "csv",
                 "--grid-resolution", "8"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.splitlines()[0] == "z_re,z_im,w_re,w_im,rho"


def test_verify_all_shipped_specs_pass(capsys):
    for spec in sorted(SPECS_DIR.glob("*.json")):
        code, doc = run_json(capsys, "verify-all", "--input", str(spec),
                             "--no-timestamp")
        assert code == 0, f"{spec.name}: {doc}"
        assert doc["passed"] is True


def test_verify_all_detects_corrupted_coefficient(tmp_path, capsys):
    doc = json.loads((SPECS_DIR / "extremal_lft.json").read_text())
    doc["coefficients"][2][0] += 0.8
    bad = tmp_path / "corrupt.json"
    bad.write_text(json.dumps(doc))
    code, out = run_json(capsys, "verify-all", "--input", str(bad), "--no-timestamp")
    assert code == 2
    failing = [r["name"] for r in out["reports"] if r["verdict"] == "fail"]
    assert "poukka" in failing


def test_explore_determinism(tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["explore", "--problem", "3", "--family", "random-polynomial",
            "--count", "3", "--seed", "5", "--w-resolution", "6",
            "--no-timestamp"]
    assert main(argv + ["--out", str(out1)]) == 0
    assert main(argv + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_timestamp_present_by_default(capsys):
    code, doc = run_json(capsys, "eval", "--input", IDENTITY)
    assert code == 0
    assert "timestamp" in doc


def test_stdin_input(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(
        '{"kind": "polynomial", "params": {"coefficients": [[0,0],[1,0]]}}'))
    code, doc = run_json(capsys, "eval", "--input", "-", "--no-timestamp")
    assert code == 0


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = main(["eval", "--input", IDENTITY, "--no-timestamp", "--out", str(target)])
    assert code == 0
    assert json.loads(target.read_text())["command"] == "eval"


# -- error paths --------------------------------------------------------------


def test_usage_error_exit_code(capsys):
    assert main([]) == 1
    assert main(["eval"]) == 1  # missing --input
    assert main(["explore", "--input", IDENTITY]) == 1  # missing --problem


def test_unknown_tolerance(capsys):
    assert main(["eval", "--input", IDENTITY, "--tol", "bogus=1"]) == 1


def test_tolerance_must_be_positive(capsys):
    assert main(["eval", "--input", IDENTITY, "--tol", "diam_tol=-1"]) == 1


def test_quadrature_power_of_two(capsys):
    assert main(["verify-all", "--input", IDENTITY, "--tol", "quadrature_n=1000"]) == 1


def test_bad_spec_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "polynomial", "params": {"coefficients": [[0,0], "x"]}}')
    assert main(["eval", "--input", str(bad)]) == 1
    err = capsys.readouterr().err
    assert "$.params.coefficients[1]" in err


def test_missing_file(capsys):
    assert main(["eval", "--input", "/nonexistent/path.json"]) == 1

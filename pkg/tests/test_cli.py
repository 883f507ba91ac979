import subprocess
import sys
from pathlib import Path

import pytest

from skeincert.cli import JobSpec, SchemaError, main, run_job
from skeincert.report import CONVENTIONS

JOBS = Path(__file__).resolve().parent.parent / "jobs"


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv, code", [
    (["verify-inde", "--bound", "2"], 0),
    (["verify-degree-bounds", "--max-exp", "1", "--pairs", "10"], 0),
    (["verify-oracle", "--triples", "50", "--elements", "10", "--words", "5", "--pairs-per-word", "5"], 0),
    (["certify", "--job", str(JOBS / "case1c.job"), "--cutoff", "4"], 0),
    (["certify", "--job", str(JOBS / "x_only.job")], 1),
    (["certify", "--job", str(JOBS / "x_only.job"), "--cap", "1"], 2),
    (["validate-dt", "g=2;n=0,0,0;t=0,0,-1"], 1),
    (["validate-dt", "--g", "3", "--n", "1,2,3,2,3,1", "--t", "0,0,0,1,1,0"], 0),
    (["family", "--case", "2b", "--n", "1", "--m", "1", "--t", "0"], 0),
    (["family", "--case", "1a", "--n", "2", "--t1", "1", "--t2", "1"], 1),
    (["sliding", "--n", "2"], 0),
    (["sliding", "--n", "3"], 1),
])
def test_exit_codes(capsys, argv, code):
    got, out, _ = _run(capsys, *argv)
    assert got == code
    assert out.startswith("# skeincert report")
    assert f"verdict: {['pass', 'fail', 'inconclusive'][code]}" in out


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["verify-inde", "--bound", "x"],
    ["verify-inde", "--frobnicate"],
    ["certify", "--job", "/nonexistent/job"],
    ["family", "--case", "9z"],
    ["family", "--case", "1a", "--n", "1"],
    ["validate-dt", "g=two"],
    ["validate-dt", "--g", "2"],
    ["sliding"],
])
def test_input_errors(capsys, argv):
    code, out, err = _run(capsys, *argv)
    assert code == 3 and out == ""
    assert err.startswith("input error:")


def test_schema_paths():
    with pytest.raises(SchemaError) as e:
        JobSpec("verify-inde", {"bound": "four"}).validated()
    assert e.value.path == "parameters.bound"
    with pytest.raises(SchemaError) as e:
        JobSpec("verify-inde", {"depth": 3}).validated()
    assert e.value.path == "parameters.depth"
    with pytest.raises(SchemaError) as e:
        JobSpec("verify-inde", {}, seed=-1).validated()
    assert e.value.path == "seed"


def test_run_job_examples():
    r = run_job(JobSpec("verify-inde", {"bound": 4}))
    assert r.verdict == "pass" and "kernel basis: (1,1,1,-1,-1,-1,1)" in r.render()
    r = run_job(JobSpec("validate-dt", {"g": 2, "n": (0, 0, 0), "t": (0, 0, -1)}))
    assert r.verdict == "fail"
    r = run_job(JobSpec("certify", {"job": str(JOBS / "case2a.job"), "cutoff": 9}))
    assert r.verdict == "pass"


def test_report_layout(capsys):
    _, out, _ = _run(capsys, "sliding", "--n", "0")
    assert "[conventions]" in out and "[parameters]" in out
    for k, v in CONVENTIONS:
        assert f"{k}: {v}" in out
    assert "input-digest: sha256:" in out
    assert "elapsed-seconds" not in out
    assert "canonical: {6:1} / {0:-1, 6:1}" in out


def test_timing_is_opt_in(capsys):
    _, out, _ = _run(capsys, "sliding", "--n", "0", "--timing")
    assert "elapsed-seconds:" in out


def test_byte_identical(capsys):
    argv = ["verify-oracle", "--seed", "17", "--triples", "30", "--elements", "5", "--words", "4",
            "--pairs-per-word", "3"]
    _, a, _ = _run(capsys, *argv)
    _, b, _ = _run(capsys, *argv)
    assert a == b
    _, c, _ = _run(capsys, *argv[:2], "18", *argv[3:])
    assert c != a


def test_digest_tracks_inputs(capsys):
    _, a, _ = _run(capsys, "sliding", "--n", "2")
    _, b, _ = _run(capsys, "sliding", "--n", "4")
    da = [l for l in a.splitlines() if l.startswith("input-digest")]
    db = [l for l in b.splitlines() if l.startswith("input-digest")]
    assert da != db


def test_out_file(tmp_path, capsys):
    target = tmp_path / "r.txt"
    code, out, _ = _run(capsys, "verify-inde", "--bound", "1", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("# skeincert report")


def test_certify_report_has_witness(capsys):
    _, out, _ = _run(capsys, "certify", "--job", str(JOBS / "case1c.job"), "--cutoff", "3")
    assert "a3 - a1*a2" in out
    assert "replay failures: 0" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "skeincert", "sliding", "--n", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "verdict: pass" in r.stdout

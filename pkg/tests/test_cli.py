import json
import os
import subprocess
import sys
import time

import pytest

from humbert_degen.cli import RESERVED, run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, _ = call(capsys, *argv)
    return code, json.loads(out)


def test_count_boundary_points(capsys):
    code, doc = report(capsys, "count-boundary-points", "--m", "6")
    assert code == 0
    assert doc["count"] == 3 and doc["phi_plus_one"] == 3 and doc["pass"] is True
    assert set(RESERVED) <= set(doc) and doc["schema"] == 1


def test_fiber_dot(capsys):
    code, out, _ = call(capsys, "fiber-dualgraph", "--m", "3", "--stratum", "III", "--format", "dot")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "graph fiber {" and lines[-1] == "}"
    assert sum(1 for l in lines if l.strip().endswith(";") and "--" not in l and "=" not in l) == 5
    assert sum(1 for l in lines if "--" in l) == 5


def test_exponent_check(capsys):
    code, doc = report(capsys, "exponent-check", "--family", "ce", "--c", "1", "--e", "1", "--m", "2", "--seed", "7")
    assert code == 0 and doc["exponent"] == 2 and doc["pass"] is True
    code, doc = report(capsys, "exponent-check", "--family", "inf", "--m", "5")
    assert code == 0 and doc["exponent"] == 5


@pytest.mark.parametrize(
    "argv",
    [
        ["enumerate-vectors", "--m", "3", "--bound", "3"],
        ["humbert-sample", "--v", "1,-1,-2,0,0", "--seed", "4"],
        ["limit-corank1", "--v", "0,2,1,0,1"],
        ["limit-corank2", "--m", "3", "--z", "0.25j"],
        ["branch-multiplicity", "--m", "6"],
        ["orbit-sl2", "--m", "12", "--c", "5", "--e", "7"],
        ["verify-y-action", "--samples", "50"],
        ["verify-ideal-invariance", "--m", "7"],
        ["verify-ideal-invariance", "--m", "7", "--family", "inf"],
        ["classify-surface", "--m", "4", "--stratum", "I"],
    ],
)
def test_subcommands_pass(capsys, argv):
    code, doc = report(capsys, *argv)
    assert code == 0 and doc["pass"] is True and doc["command"] == argv[0]


def test_deterministic_modulo_duration(capsys):
    argv = ["humbert-sample", "--v", "0,4,0,1,3", "--seed", "11"]
    _, a = report(capsys, *argv)
    _, b = report(capsys, *argv)
    a.pop("duration_s"), b.pop("duration_s")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_assertion_failure_exits_1(capsys):
    code, doc = report(capsys, "limit-corank1", "--v", "1,0,-1,0,0")
    assert code == 1 and doc["pass"] is False and doc["limit"] is None
    code, doc = report(capsys, "humbert-sample", "--v", "1,-2,3,3,-2")
    assert code == 1 and "empty" in doc["reason"]


@pytest.mark.parametrize(
    "argv,flag",
    [
        (["count-boundary-points"], "--m"),
        (["count-boundary-points", "--m", "1"], "--m"),
        (["humbert-sample", "--v", "1,2"], "--v"),
        (["humbert-sample", "--v", "1,0,-2,0,1"], "--v"),
        (["exponent-check", "--family", "ce", "--m", "3"], "--c"),
        (["count-boundary-points", "--m", "3", "--format", "dot"], "--format"),
        (["no-such-command"], "invalid choice"),
    ],
)
def test_usage_errors_exit_2(capsys, argv, flag):
    code, out, err = call(capsys, *argv)
    assert code == 2 and out == ""
    assert flag in err and "usage:" in err


def test_out_path(tmp_path, capsys):
    target = tmp_path / "fiber.dot"
    code, out, _ = call(capsys, "--out", str(target), "fiber-dualgraph", "--m", "4", "--stratum", "II", "--format", "dot")
    assert code == 0 and out == ""
    assert target.read_text().count(" -- ") == 3


def test_text_format(capsys):
    code, out, _ = call(capsys, "--format", "text", "count-boundary-points", "--m", "5")
    assert code == 0 and "count: 5" in out and "pass: true" in out


def test_verify_all_subprocess():
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "humbert_degen", "verify-all", "--m-max", "12"],
        capture_output=True,
        text=True,
        env={**os.environ, "HUMBERT_DEGEN_THREADS": "2"},
    )
    assert proc.returncode == 0, proc.stderr
    assert time.perf_counter() - start < 120
    doc = json.loads(proc.stdout)
    assert doc["pass"] is True and len(doc["checks"]) == 9

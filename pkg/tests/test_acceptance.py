"""The ten acceptance criteria at their full ranges and tolerances.

Each test prints one PASS/FAIL line (visible with ``pytest -v``, captured or not).
"""
import json
import os
import subprocess
import sys
import time

import pytest

from humbert_degen import checks


@pytest.fixture
def announce(capsys):
    def _announce(number, result_or_flag, label=None, details=""):
        if isinstance(result_or_flag, checks.CheckResult):
            ok, label = result_or_flag.passed, label or result_or_flag.name
            details = details or f"({result_or_flag.seconds:.2f}s) {result_or_flag.details}"
        else:
            ok = bool(result_or_flag)
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {label} {details}")
        return ok

    return _announce


def test_criterion_01_boundary_count(announce):
    res = checks.boundary_count(range(2, 51))
    assert announce(1, res)


def test_criterion_02_sl2_transitivity(announce):
    res = checks.sl2_transitivity(range(2, 31), extra_starts=3, seed=0)
    assert announce(2, res and res.seconds < 10, res.name, f"({res.seconds:.2f}s) {res.details}")


def test_criterion_03_corank1_limits(announce):
    assert announce(3, checks.corank1_limits(200, 10, seed=0))


def test_criterion_04_corank2_limits(announce):
    assert announce(4, checks.corank2_limits(100, 10, seed=0))


def test_criterion_05_y_algebra(announce):
    assert announce(5, checks.y_algebra(1000, seed=0))


def test_criterion_06_ideal_invariance(announce):
    assert announce(6, checks.ideal_invariance(range(2, 21)))


def test_criterion_07_fiber_polygons(announce):
    assert announce(7, checks.fiber_polygons(range(2, 13)))


def test_criterion_08_exponent_criterion(announce):
    res = checks.exponent_criterion(range(2, 11), samples_per_family=1, seed=0)
    assert announce(8, res.passed and res.seconds < 30, res.name, f"({res.seconds:.2f}s) {res.details}")


def test_criterion_09_humbert_identities(announce):
    assert announce(9, checks.humbert_identities(1000, 10, seed=0))


def test_criterion_10_verify_all(announce):
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "humbert_degen", "verify-all", "--m-max", "12"],
        capture_output=True,
        text=True,
        env=os.environ.copy(),
    )
    elapsed = time.perf_counter() - start
    ok = proc.returncode == 0 and elapsed < 120 and json.loads(proc.stdout)["pass"] is True
    assert announce(10, ok, "verify-all --m-max 12", f"exit {proc.returncode} in {elapsed:.2f}s")

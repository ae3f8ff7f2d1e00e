"""End-to-end verification routines shared by the CLI ``verify-all`` and the acceptance tests.

Each check takes its parameter ranges explicitly and returns a CheckResult.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import corank1, corank2, families, mumford
from .siegel import DiscriminantVector, humbert_residual


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name} ({self.seconds:.2f}s) {self.details}"


def _timed(fn):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        result = fn(*args, **kwargs)
        result.seconds = time.perf_counter() - start
        return result

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def totient(n: int) -> int:
    """Euler phi by trial factorization."""
    result, p, rest = n, 2, n
    while p * p <= rest:
        if rest % p == 0:
            while rest % p == 0:
                rest //= p
            result -= result // p
        p += 1
    if rest > 1:
        result -= result // rest
    return result


def order_m_count(m: int) -> int:
    """m^2 prod_{p | m} (1 - 1/p^2), by trial factorization."""
    count, p, rest = m * m, 2, m
    while p * p <= rest:
        if rest % p == 0:
            while rest % p == 0:
                rest //= p
            count = count // (p * p) * (p * p - 1)
        p += 1
    if rest > 1:
        count = count // (rest * rest) * (rest * rest - 1)
    return count


@_timed
def boundary_count(ms) -> CheckResult:
    bad, slowest = {}, 0.0
    for m in ms:
        start = time.perf_counter()
        count = len(corank2.boundary_intersection_points(m))
        slowest = max(slowest, time.perf_counter() - start)
        if count != totient(m) + 1:
            bad[m] = count
    return CheckResult(
        "phi(m)+1 boundary points", not bad and slowest < 1.0, {"m": f"{min(ms)}..{max(ms)}", "mismatches": bad, "slowest_s": round(slowest, 3)}
    )


@_timed
def sl2_transitivity(ms, extra_starts: int = 3, seed: int = 0) -> CheckResult:
    rng = np.random.default_rng(seed)
    bad = []
    for m in ms:
        full = corank1.order_m_classes(m)
        if len(full) != order_m_count(m):
            bad.append((m, "class count"))
        starts = sorted(full, key=lambda c: c.pair())
        picks = [starts[0]] + [starts[i] for i in rng.integers(0, len(starts), extra_starts)]
        for start in picks:
            if corank1.sl2_mod_m_orbit(m, start) != full:
                bad.append((m, start.pair()))
    return CheckResult("SL(2,Z/m) transitivity", not bad, {"m": f"{min(ms)}..{max(ms)}", "failures": bad})


@_timed
def corank1_limits(samples: int = 200, m_max: int = 10, seed: int = 0) -> CheckResult:
    rng = np.random.default_rng(seed)
    heights = list(range(5, 41))
    worst, nonmonotone = 0.0, 0
    for _ in range(samples):
        m = int(rng.integers(2, m_max + 1))
        while True:
            c, e = (int(x) for x in rng.integers(0, m + 1, 2))
            if math.gcd(m, c, e) == 1:
                break
        v = DiscriminantVector(0, m, c, 0, e, m)
        tau22 = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.5, 2.5))
        limit = corank1.corank1_limit(v).point(tau22)
        expected_z = -(c * tau22 + e) / m
        if abs(limit.z - expected_z) > 1e-12:
            nonmonotone += 1
        dists = [p.distance(limit) for p in corank1.track_limit_corank1(v, tau22, heights)]
        if any(d2 >= d1 for d1, d2 in zip(dists, dists[1:])):
            nonmonotone += 1
        worst = max(worst, dists[-1])
    return CheckResult(
        "corank-1 limit law",
        worst < 1e-6 and nonmonotone == 0,
        {"samples": samples, "max_dist_h40": worst, "nonmonotone": nonmonotone},
    )


@_timed
def corank2_limits(samples: int = 100, m_max: int = 10, seed: int = 0) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        m = int(rng.integers(2, m_max + 1))
        z = complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5))
        (pt,) = corank2.psi_limit_family(m, z, [60.0])
        target = corank2.psi_limit(z)
        worst = max(worst, max(abs(x - y) for x, y in zip(pt, target)))
    return CheckResult("corank-2 limit law", worst < 1e-6, {"samples": samples, "max_dist_h60": worst})


@_timed
def y_algebra(samples: int = 1000, seed: int = 0) -> CheckResult:
    report = mumford.verify_group_law(samples, seed)
    return CheckResult("Y algebra", report.passed, report.details)


@_timed
def ideal_invariance(ms) -> CheckResult:
    bad = []
    for m in ms:
        families_ = [(c, 1) for c in range(m + 1)] + [mumford.INFINITY]
        for fam in families_:
            if not mumford.verify_ideal_invariance(m, fam):
                bad.append((m, fam, "generator"))
            if fam == mumford.INFINITY:
                controls = [mumford.YElement(-m, 1), mumford.YElement(-(m - 1), 2)]
            else:
                c = fam[0]
                controls = [mumford.YElement(c, m - 1), mumford.YElement(c + 1, m)]
            good = mumford.family_generator(m, fam)
            for ctl in controls:
                if ctl != good and mumford.verify_ideal_invariance(m, fam, ctl):
                    bad.append((m, fam, (ctl.alpha, ctl.beta)))
    return CheckResult("ideal invariance", not bad, {"m": f"{min(ms)}..{max(ms)}", "failures": bad})


@_timed
def fiber_polygons(ms) -> CheckResult:
    bad = []
    for m in ms:
        expected = {"I": m, "II": m - 1, "III": 2 * m - 1}
        for stratum, n in expected.items():
            graph = mumford.degenerate_fiber(m, stratum)
            oracle = mumford.quotient_cycle_oracle(3 * n + 2, n)
            ok = (
                graph.cycle_length() == n
                and oracle.cycle_length() == n
                and len(graph.vertices) == len(graph.edges)
                and graph.arithmetic_genus() == 1
            )
            if m == 2 and stratum == "II":
                ok = ok and graph.edges == [(graph.vertices[0], graph.vertices[0])]
            if not ok:
                bad.append((m, stratum))
    return CheckResult("fiber polygons", not bad, {"m": f"{min(ms)}..{max(ms)}", "failures": bad})


@_timed
def exponent_criterion(ms, samples_per_family: int = 1, seed: int = 0) -> CheckResult:
    """Every finite family (c, e) and the infinity family for each m."""
    rng = np.random.default_rng(seed)
    worst_line, bad = 0.0, []
    for m in ms:
        finite = [(c, e) for c in range(m + 1) for e in range(m + 1) if math.gcd(m, c, e) == 1]
        for fam in finite + [mumford.INFINITY]:
            v = families.family_vector(m, fam)
            for _ in range(samples_per_family):
                tau = families.family_period_matrix(fam, m, families.random_family_params(fam, m, rng))
                w = families.subvariety_image(v, tau)
                worst_line = max(worst_line, families.line_distance(w, families.expected_line(fam)))
                exponent = families.exponent_of_subtorus(v, tau)
                if exponent != m:
                    bad.append((m, fam, exponent))
    return CheckResult(
        "exponent criterion",
        worst_line < 1e-8 and not bad,
        {"m": f"{min(ms)}..{max(ms)}", "max_line_dist": worst_line, "failures": bad},
    )


@_timed
def humbert_identities(samples: int = 1000, m_max: int = 10, seed: int = 0) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        m = int(rng.integers(2, m_max + 1))
        if rng.random() < 0.5:
            fam = mumford.INFINITY
        else:
            while True:
                c, e = (int(x) for x in rng.integers(0, m + 1, 2))
                if math.gcd(m, c, e) == 1:
                    break
            fam = (c, e)
        tau = families.family_period_matrix(fam, m, families.random_family_params(fam, m, rng))
        worst = max(worst, abs(humbert_residual(families.family_vector(m, fam), tau)))
    return CheckResult("Humbert identities", worst < 1e-12, {"samples": samples, "max_residual": worst})


def plan(m_max: int = 12, seed: int = 0) -> list[tuple]:
    """(check, args) pairs for every acceptance check, ranges capped at ``m_max``."""
    top = max(m_max, 2)
    return [
        (boundary_count, (range(2, min(50, top) + 1),)),
        (sl2_transitivity, (range(2, min(30, top) + 1), 3, seed)),
        (corank1_limits, (200, min(10, top), seed)),
        (corank2_limits, (100, min(10, top), seed)),
        (y_algebra, (1000, seed)),
        (ideal_invariance, (range(2, min(20, top) + 1),)),
        (fiber_polygons, (range(2, min(12, top) + 1),)),
        (exponent_criterion, (range(2, min(10, top) + 1), 1, seed)),
        (humbert_identities, (1000, min(10, top), seed)),
    ]


def run_all(m_max: int = 12, seed: int = 0) -> list[CheckResult]:
    return [check(*args) for check, args in plan(m_max, seed)]


def psi_decay_ratio(m: int, z: complex, h1: float, h2: float) -> tuple[float, float]:
    """Observed and predicted ratio of distances to the corank-2 limit between two heights."""
    d1, d2 = (
        max(abs(x - y) for x, y in zip(p, corank2.psi_limit(z)))
        for p in corank2.psi_limit_family(m, z, [h1, h2])
    )
    return d2 / d1, math.exp(-2 * math.pi * (h2 - h1) / (m - 1))


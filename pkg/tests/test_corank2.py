import cmath
import math

import numpy as np
import pytest

from humbert_degen.checks import psi_decay_ratio, totient
from humbert_degen.corank2 import (
    TorusPoint,
    admissible_branches,
    boundary_intersection_points,
    branch_limit,
    branch_multiplicity,
    chart_boundary_range,
    chart_limit_points,
    chart_minus_one_to_zero,
    e2_map,
    infinity_family_matrix,
    iota_n,
    iota_sec3,
    j_map,
    psi_limit,
    psi_limit_family,
)
from humbert_degen.siegel import NotInSiegel, PeriodMatrix


def e(x):
    return cmath.exp(2j * math.pi * x)


def random_torus(rng):
    r = rng.uniform(0.3, 2.0, 3)
    th = rng.uniform(0, 2 * math.pi, 3)
    return TorusPoint(*(ri * cmath.exp(1j * t) for ri, t in zip(r, th)))


def test_e2_examples():
    q = math.exp(-2 * math.pi)
    assert tuple(e2_map(PeriodMatrix(1j, 0, 1j))) == pytest.approx((q, 1, q))
    assert e2_map(PeriodMatrix(1j, 0.5, 1j)).t2 == pytest.approx(-1)
    assert tuple(e2_map(PeriodMatrix(2j, 1j, 2j))) == pytest.approx((q * q, q, q * q))


def test_iota_examples(rng):
    one = TorusPoint(1, 1, 1)
    for n in range(-3, 4):
        assert iota_n(one, n).coords() == (1, 1, 1)
    assert iota_sec3(one) == (1, 1, 1)
    q, w = 0.3 + 0.1j, 0.7 - 0.2j
    assert iota_sec3(TorusPoint(q, w, q)) == pytest.approx((q / w, w, q / w))
    for _ in range(100):
        p = random_torus(rng)
        t1, t2, t3 = p
        assert iota_n(p, 0).coords() == pytest.approx((t1 / t2, t2, t3 / t2), rel=1e-12)
        assert iota_n(p, -1).coords() == pytest.approx(j_map(p), rel=1e-12)
        assert iota_sec3(p) == pytest.approx(iota_n(p, 0).coords(), rel=1e-12)


def test_torus_rejects_zero():
    with pytest.raises(ValueError):
        TorusPoint(0, 1, 1)


def test_psi_examples():
    for z, target in [(0, (0, 1, 0)), (0.5, (0, -1, 0))]:
        (pt,) = psi_limit_family(2, z, [40])
        assert max(abs(x - y) for x, y in zip(pt, target)) < 1e-6
    (pt,) = psi_limit_family(3, 0.25j, [60])
    assert max(abs(x - y) for x, y in zip(pt, (0, math.exp(-math.pi / 2), 0))) < 1e-8
    assert psi_limit(0.25j)[1] == pytest.approx(math.exp(-math.pi / 2))


def test_psi_rejects_points_outside_siegel():
    with pytest.raises(NotInSiegel):
        psi_limit_family(3, 5j, [1.0])
    with pytest.raises(NotInSiegel):
        infinity_family_matrix(2, 0, -1j)


@pytest.mark.parametrize("m", [2, 3, 5, 8])
def test_psi_decay_rate(m, rng):
    for _ in range(5):
        z = complex(*rng.uniform(-0.4, 0.4, 2))
        for h in (30, 40):
            observed, predicted = psi_decay_ratio(m, z, h, h + 2)
            assert observed == pytest.approx(predicted, rel=0.10)


def test_chart_range_examples():
    assert chart_boundary_range(0, 4) == {-1, 0}
    assert chart_boundary_range(1, 4) == {0}
    assert chart_boundary_range(3, 4) == {0}


def test_chart_range_property():
    for m in range(2, 40):
        for b in range(m):
            got = chart_boundary_range(b, m)
            brute = {n for n in range(-5, 6) if -m + b <= n * m <= b}
            assert got == brute
            assert got <= {-1, 0}
            assert (got == {-1, 0}) == (b == 0)
    with pytest.raises(ValueError):
        chart_boundary_range(4, 4)


def test_branch_limits_exist_only_in_range():
    for m in range(2, 12):
        for a, b in admissible_branches(m):
            for n in (-2, -1, 0, 1):
                assert (branch_limit(a, b, m, n) is not None) == (n in chart_boundary_range(b, m))


def test_boundary_points_m2_m4_m6():
    pts = boundary_intersection_points(2)
    assert len(pts) == 2
    assert {tuple(np.round(p.to_complex(), 12)) for p in pts} == {(0, 0), (-1, 0)}
    pts = boundary_intersection_points(4)
    assert len(pts) == 3
    vals = {tuple(np.round(p.to_complex(), 12)) for p in pts}
    assert vals == {(0, 0), (1j, 0), (-1j, 0)}
    assert len(boundary_intersection_points(6)) == 3


def brute_numeric_limits(m):
    """Independent floating oracle: evaluate the branches at tiny t and cluster."""
    t = 1e-6
    out = []
    for a in range(m):
        for b in range(m):
            if math.gcd(a, b, m) != 1:
                continue
            rho = e(a / m)
            x, y = t ** b * rho, t ** (m - b) / rho
            pt = (x + y, x * y)
            if not any(abs(pt[0] - q[0]) < 1e-4 and abs(pt[1] - q[1]) < 1e-4 for q in out):
                out.append(pt)
    return out


def test_boundary_count_phi_plus_one_up_to_50():
    for m in range(2, 51):
        pts = boundary_intersection_points(m)
        assert len(pts) == totient(m) + 1
        origins = [p for p in pts if p.is_origin()]
        assert len(origins) == 1 and origins[0].tag == "origin"
        others = [p for p in pts if not p.is_origin()]
        exps = sorted(p.sym[0].root_of_unity_exponent() for p in others)
        assert exps == [k for k in range(m) if math.gcd(k, m) == 1]
        assert all(p.sym[1].is_zero() for p in others)
        assert all(b != 0 for _, b in origins[0].branches)
        if m <= 20:
            assert len(brute_numeric_limits(m)) == len(pts)


def test_totient_oracle():
    assert [totient(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]


def test_chart_minus_one_agrees_with_chart_zero():
    for m in range(2, 20):
        zero = chart_limit_points(m, 0)
        minus = chart_limit_points(m, -1)
        # the two charts overlap away from their origins; there the transition identifies them
        moved = {chart_minus_one_to_zero(p) for p in minus if not p[1].is_zero()}
        assert moved and moved <= zero
        assert moved == {p for p in zero if not p[0].is_zero()}


def test_branch_multiplicity_examples():
    bo = branch_multiplicity(0, 1, 3)
    assert bo.orders == (1, 3) and bo.smooth
    bo = branch_multiplicity(1, 2, 4)
    assert bo.cancellation and bo.smooth is None and bo.orders[0] is None
    bo = branch_multiplicity(1, 2, 5)
    assert bo.orders == (2, 5) and bo.smooth is False


def test_branch_multiplicity_orders_match_numeric_oracle():
    for m in range(2, 13):
        for a, b in admissible_branches(m):
            if b == 0:
                continue
            bo = branch_multiplicity(a, b, m)
            rho = e(a / m)
            f = lambda t: t ** b * rho + t ** (m - b) / rho
            if bo.cancellation:
                assert abs(f(0.1)) < 1e-12
                continue
            # order = slope of log|f| between two small t
            slope = math.log(abs(f(1e-3)) / abs(f(1e-4))) / math.log(10)
            assert round(slope) == bo.orders[0] == min(b, m - b)
            assert bo.orders[1] == m


def test_branch_multiplicity_preconditions():
    with pytest.raises(ValueError):
        branch_multiplicity(1, 0, 4)
    with pytest.raises(ValueError):
        branch_multiplicity(2, 2, 4)

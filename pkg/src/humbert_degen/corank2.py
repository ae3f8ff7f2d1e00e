"""Corank-2 boundary: the partial quotient e2, toric charts, and C_m meeting the peripheral P^1."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

from .cyclotomic import CyclotomicElement, LaurentPoly
from .siegel import NotInSiegel, PeriodMatrix, in_siegel


@dataclass(frozen=True)
class TorusPoint:
    t1: complex
    t2: complex
    t3: complex

    def __post_init__(self):
        if 0 in (self.t1, self.t2, self.t3):
            raise ValueError("torus coordinates must be nonzero")

    def __iter__(self):
        return iter((self.t1, self.t2, self.t3))


@dataclass(frozen=True)
class ChartPoint:
    n: int
    x1: complex
    x2: complex
    x3: complex

    def coords(self) -> tuple[complex, complex, complex]:
        return (self.x1, self.x2, self.x3)


def _e(x: complex) -> complex:
    return cmath.exp(2j * math.pi * x)


def e2_map(tau: PeriodMatrix) -> TorusPoint:
    return TorusPoint(_e(tau.tau11), _e(tau.tau12), _e(tau.tau22))


def chart_exponents(n: int) -> tuple[tuple[int, int, int], ...]:
    """Exponent vectors of (t1, t2, t3) for the three coordinates of iota_n."""
    return ((1, -(2 * n + 1), n * (n + 1)), (0, 1, -n), (0, -1, n + 1))


def _monomial(p: TorusPoint, exps) -> complex:
    return p.t1 ** exps[0] * p.t2 ** exps[1] * p.t3 ** exps[2]


def iota_n(p: TorusPoint, n: int) -> ChartPoint:
    return ChartPoint(n, *(_monomial(p, ex) for ex in chart_exponents(n)))


def j_map(p: TorusPoint) -> tuple[complex, complex, complex]:
    """(t1 t2, t2 t3, 1/t2): the base coordinates of the Mumford family."""
    return (p.t1 * p.t2, p.t2 * p.t3, 1 / p.t2)


def iota_sec3(p: TorusPoint) -> tuple[complex, complex, complex]:
    """(t1/t2, t2, t3/t2): the chart used to view X(F2) near the peripheral P^1."""
    return (p.t1 / p.t2, p.t2, p.t3 / p.t2)


def infinity_family_matrix(m: int, z: complex, tau: complex) -> PeriodMatrix:
    """T_{z,tau} = [[tau, z], [z, (tau - (m-2) z)/(m-1)]], a point of H_2(1, -(m-2), -(m-1), 0, 0)."""
    if m < 2:
        raise ValueError("m must be at least 2")
    t22 = (tau - (m - 2) * z) / (m - 1)
    if not in_siegel(tau, z, t22):
        raise NotInSiegel(f"T_(z={z}, tau={tau}) is not in the Siegel space for m = {m}")
    return PeriodMatrix(tau, z, t22)


def psi(tau: PeriodMatrix) -> tuple[complex, complex, complex]:
    return iota_sec3(e2_map(tau))


def psi_limit_family(m: int, z: complex, heights: Sequence[float]) -> list[tuple[complex, complex, complex]]:
    """psi(T_{z, i h}) for each height h; tends to (0, exp(2 pi i z), 0)."""
    return [psi(infinity_family_matrix(m, z, 1j * h)) for h in heights]


def psi_limit(z: complex) -> tuple[complex, complex, complex]:
    return (0j, _e(z), 0j)


def chart_boundary_range(b: int, m: int) -> set[int]:
    """Charts n in which the curve (t^b rho^a, t^m) acquires a boundary point.

    That is all integers n with -1 + b/m <= n <= b/m.
    """
    if not 0 <= b < m:
        raise ValueError("need 0 <= b < m")
    lo = -((m - b) // m)  # ceil((b - m)/m)
    hi = b // m
    return set(range(lo, hi + 1))


def chart_curve(a: int, b: int, m: int, n: int) -> tuple[LaurentPoly, LaurentPoly]:
    """The curve (u, v) = (t^b rho^a, t^m) in the chart (u v^-n, u^-1 v^(n+1))."""
    x = LaurentPoly.monomial(m, b - n * m, CyclotomicElement.root(m, a))
    y = LaurentPoly.monomial(m, (n + 1) * m - b, CyclotomicElement.root(m, -a))
    return x, y


@dataclass(frozen=True)
class BranchPoint:
    """Limit of the branch (a, b) before and after the swap quotient (x, y) -> (x + y, xy)."""

    a: int
    b: int
    limit_xy: tuple[CyclotomicElement, CyclotomicElement]
    limit_sym: tuple[CyclotomicElement, CyclotomicElement]


def branch_limit(a: int, b: int, m: int, n: int = 0) -> BranchPoint | None:
    x, y = chart_curve(a, b, m, n)
    lx, ly = x.limit_at_zero(), y.limit_at_zero()
    if lx is None or ly is None:
        return None
    return BranchPoint(a, b, (lx, ly), (lx + ly, lx * ly))


def admissible_branches(m: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(m) for b in range(m) if math.gcd(a, b, m) == 1]


@dataclass
class BoundaryPoint:
    """A point of C_m on the peripheral P^1, in swap-quotient coordinates."""

    sym: tuple[CyclotomicElement, CyclotomicElement]
    tag: str
    branches: list[tuple[int, int]] = field(default_factory=list)

    def to_complex(self) -> tuple[complex, complex]:
        return (self.sym[0].to_complex(), self.sym[1].to_complex())

    def is_origin(self) -> bool:
        return self.sym[0].is_zero() and self.sym[1].is_zero()


def boundary_intersection_points(m: int) -> list[BoundaryPoint]:
    """Exact limit points of all admissible branches in chart n = 0, deduplicated."""
    if m < 2:
        raise ValueError("m must be at least 2")
    points: dict[tuple, BoundaryPoint] = {}
    for a, b in admissible_branches(m):
        bp = branch_limit(a, b, m, 0)
        if bp is None:
            continue
        key = bp.limit_sym
        if key not in points:
            if bp.limit_sym[0].is_zero() and bp.limit_sym[1].is_zero():
                tag = "origin"
            else:
                k = bp.limit_sym[0].root_of_unity_exponent()
                tag = f"smooth, b=0, root-of-unity point (rho^{k}, 0)"
            points[key] = BoundaryPoint(bp.limit_sym, tag)
        points[key].branches.append((a, b))
    return sorted(points.values(), key=lambda p: (not p.is_origin(), p.sym[0].root_of_unity_exponent() or 0))


def chart_limit_points(m: int, n: int) -> set[tuple[CyclotomicElement, CyclotomicElement]]:
    """Limit points (before the swap quotient) of all admissible branches in chart n."""
    out = set()
    for a, b in admissible_branches(m):
        bp = branch_limit(a, b, m, n)
        if bp is not None:
            out.add(bp.limit_xy)
    return out


def chart_minus_one_to_zero(
    point: tuple[CyclotomicElement, CyclotomicElement],
) -> tuple[CyclotomicElement, CyclotomicElement]:
    """Transition (x, y) -> (1/y, x y^2) from chart -1 to chart 0; needs y a root of unity."""
    x, y = point
    return (y.inverse_root(), x * y * y)


@dataclass(frozen=True)
class BranchOrder:
    a: int
    b: int
    m: int
    orders: tuple[int | None, int]
    cancellation: bool

    @property
    def smooth(self) -> bool | None:
        if self.cancellation:
            return None
        return min(o for o in self.orders if o is not None) == 1


def branch_multiplicity(a: int, b: int, m: int) -> BranchOrder:
    """Vanishing orders of (x + y, xy) = (t^b rho^a + t^(m-b) rho^-a, t^m) at t = 0.

    When m = 2b and rho^a + rho^-a = 0 the first coordinate vanishes identically;
    this is flagged as a cancellation instead of being given an order.
    """
    if not 0 < b < m:
        raise ValueError("origin branches need 0 < b < m")
    if math.gcd(a, b, m) != 1:
        raise ValueError(f"gcd({a}, {b}, {m}) != 1")
    x, y = chart_curve(a, b, m, 0)
    first = x + y
    order = first.order()
    return BranchOrder(a, b, m, (order, (x * y).order()), order is None)

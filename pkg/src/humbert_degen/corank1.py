"""Corank-1 boundary: the partial quotient e1, limits of H_2(v), and torsion classes."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .siegel import DiscriminantVector, PeriodMatrix


class InvalidVector(ValueError):
    """The vector has no finite corank-1 limit (a or d is nonzero)."""


@dataclass(frozen=True)
class Corank1Point:
    q: complex
    z: complex
    tau: complex

    def distance(self, other: Corank1Point) -> float:
        return math.sqrt(
            abs(self.q - other.q) ** 2 + abs(self.z - other.z) ** 2 + abs(self.tau - other.tau) ** 2
        )


def e1_map(tau: PeriodMatrix) -> Corank1Point:
    return Corank1Point(cmath.exp(2j * math.pi * tau.tau11), tau.tau12, tau.tau22)


@dataclass(frozen=True)
class Corank1Curve:
    """Boundary curve tau -> (0, -(c tau + e)/b, tau) reached by H_2(v) with a = d = 0.

    Since b = +-m both signed parametrizations are kept; ``point`` is the branch the
    vector actually produces.
    """

    m: int
    b: int
    c: int
    e: int

    def point(self, tau: complex) -> Corank1Point:
        return Corank1Point(0j, -(self.c * tau + self.e) / self.b, complex(tau))

    def branches(self, tau: complex) -> tuple[Corank1Point, Corank1Point]:
        z = (self.c * tau + self.e) / self.m
        return Corank1Point(0j, -z, complex(tau)), Corank1Point(0j, z, complex(tau))

    def torsion_class(self) -> TorsionClass:
        return TorsionClass(self.c, self.e, self.m)


def corank1_limit(v: DiscriminantVector) -> Corank1Curve | None:
    if v.a != 0 or v.d != 0:
        return None
    # a = d = 0 and the discriminant relation force b = +-m
    return Corank1Curve(v.m, v.b, v.c, v.e)


def track_limit_corank1(
    v: DiscriminantVector, tau22: complex, heights: Sequence[float]
) -> list[Corank1Point]:
    """e1-images of the points of H_2(v) with tau11 = i*h and the given tau22."""
    curve = corank1_limit(v)
    if curve is None:
        raise InvalidVector(
            f"{v.coefficients()} has a = {v.a}, d = {v.d}; (a - d tau) tau11 has no finite limit"
        )
    tau22 = complex(tau22)
    if tau22.imag <= 0:
        raise ValueError("tau22 must lie in the upper half plane")
    z = curve.point(tau22).z
    return [e1_map(PeriodMatrix(1j * h, z, tau22)) for h in heights]


@dataclass(frozen=True)
class TorsionClass:
    """Pair (c, e) of residues mod m with gcd(c, e, m) = 1, i.e. the point (c tau + e)/m."""

    c_bar: int
    e_bar: int
    m: int

    def __post_init__(self):
        object.__setattr__(self, "c_bar", self.c_bar % self.m)
        object.__setattr__(self, "e_bar", self.e_bar % self.m)
        if math.gcd(self.c_bar, self.e_bar, self.m) != 1:
            raise ValueError(f"({self.c_bar}, {self.e_bar}) does not have order {self.m}")

    def pair(self) -> tuple[int, int]:
        return (self.c_bar, self.e_bar)

    def canonical(self) -> TorsionClass:
        """Representative modulo the sign: least of (c, e) and (-c, -e)."""
        neg = ((-self.c_bar) % self.m, (-self.e_bar) % self.m)
        return TorsionClass(*min(self.pair(), neg), self.m)


def order_m_classes(m: int) -> set[TorsionClass]:
    return {
        TorsionClass(c, e, m) for c in range(m) for e in range(m) if math.gcd(c, e, m) == 1
    }


def sl2_mod_m(m: int) -> np.ndarray:
    """All of SL(2, Z/m) as an array of shape (N, 2, 2), by brute force over entries."""
    r = np.arange(m)
    a, b, c, d = (x.ravel() for x in np.meshgrid(r, r, r, r, indexing="ij"))
    keep = (a * d - b * c) % m == 1 % m
    return np.stack([a[keep], b[keep], c[keep], d[keep]], axis=1).reshape(-1, 2, 2)


def sl2_mod_m_orbit(m: int, start: TorsionClass) -> set[TorsionClass]:
    """Orbit of the row pair ``start`` under right multiplication by SL(2, Z/m)."""
    if m < 2:
        raise ValueError("m must be at least 2")
    group = sl2_mod_m(m)
    row = np.array(start.pair())
    images = np.einsum("i,nij->nj", row, group) % m
    return {TorsionClass(int(x), int(y), m) for x, y in set(map(tuple, images.tolist()))}


@dataclass(frozen=True)
class BoundaryGroupElement:
    """Element [[eps, mm, nn], [0, a, b], [0, c, d]] of the group acting on C x H."""

    epsilon: int = 1
    mm: int = 0
    nn: int = 0
    sl2: tuple[tuple[int, int], tuple[int, int]] = ((1, 0), (0, 1))

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        (a, b), (c, d) = self.sl2
        if a * d - b * c != 1:
            raise ValueError(f"{self.sl2} does not have determinant 1")

    def matrix(self) -> np.ndarray:
        (a, b), (c, d) = self.sl2
        return np.array([[self.epsilon, self.mm, self.nn], [0, a, b], [0, c, d]], dtype=object)

    @classmethod
    def from_matrix(cls, mat) -> BoundaryGroupElement:
        mat = [[int(x) for x in row] for row in mat]
        if mat[1][0] != 0 or mat[2][0] != 0:
            raise ValueError("not of boundary-group shape")
        return cls(mat[0][0], mat[0][1], mat[0][2], ((mat[1][1], mat[1][2]), (mat[2][1], mat[2][2])))

    def __matmul__(self, other: BoundaryGroupElement) -> BoundaryGroupElement:
        """Product self * other, i.e. apply ``other`` first."""
        return BoundaryGroupElement.from_matrix(self.matrix().dot(other.matrix()))


def apply_boundary_group(g: BoundaryGroupElement, z: complex, tau: complex) -> tuple[complex, complex]:
    if complex(tau).imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    (a, b), (c, d) = g.sl2
    j = c * tau + d
    return (g.epsilon * z + g.mm * tau + g.nn) / j, (a * tau + b) / j


def torsion_representation(sl2) -> tuple[tuple[int, int], tuple[int, int]]:
    """Rational representation of z -> z/(c tau + d) on column vectors (x, y).

    A point (x + tau y)/m goes to (x' + tau' y')/m with (x', y')^T = R (x, y)^T.
    """
    (a, b), (c, d) = sl2
    return ((a, -b), (-c, d))


def torsion_pair(z: complex, tau: complex, m: int) -> tuple[int, int]:
    """Recover (x, y) mod m from z = (x + tau y)/m modulo the lattice <1, tau>."""
    w = m * complex(z)
    y = w.imag / complex(tau).imag
    x = w.real - y * complex(tau).real
    xi, yi = round(x), round(y)
    if abs(x - xi) > 1e-6 or abs(y - yi) > 1e-6:
        raise ValueError(f"{z} is not an m-torsion point for tau = {tau}")
    return xi % m, yi % m


def act_on_torsion(g: BoundaryGroupElement, cls: TorsionClass, tau: complex) -> tuple[TorsionClass, complex]:
    """Move the torsion point of ``cls`` over ``tau`` by ``g``; returns the new class and tau'."""
    z = (cls.c_bar * tau + cls.e_bar) / cls.m
    z2, tau2 = apply_boundary_group(g, z, tau)
    x, y = torsion_pair(z2, tau2, cls.m)
    return TorsionClass(y, x, cls.m), tau2

"""The families O_(c,e), O_inf of period matrices and the elliptic curves they carry."""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .corank2 import e2_map, j_map
from .mumford import INFINITY, FamilyId, LocusRelation, check_family, family_locus
from .siegel import DiscriminantVector, NotInSiegel, PeriodMatrix, humbert_residual, in_siegel


class DegenerateImage(ValueError):
    pass


class LatticeNotFound(RuntimeError):
    pass


def family_vector(m: int, family: FamilyId) -> DiscriminantVector:
    """v = (0, m, c, 0, e) for a finite family, v_inf = (1, -(m-2), -(m-1), 0, 0) for infinity."""
    check_family(m, family)
    if family == INFINITY:
        return DiscriminantVector(1, -(m - 2), -(m - 1), 0, 0, m)
    c, e = family
    return DiscriminantVector(0, m, c, 0, e, m)


def family_period_matrix(family: FamilyId, m: int, params: tuple[complex, complex]) -> PeriodMatrix:
    """(mu, tau) -> [[mu, -(c tau + e)/m], [., tau]];  (tau, z) -> [[tau, z], [z, (tau - (m-2) z)/(m-1)]]."""
    check_family(m, family)
    p, q = (complex(x) for x in params)
    if family == INFINITY:
        entries = (p, q, (p - (m - 2) * q) / (m - 1))
    else:
        c, e = family
        entries = (p, -(c * q + e) / m, q)
    if not in_siegel(*entries):
        raise NotInSiegel(f"parameters {params} leave the Siegel space for family {family}, m = {m}")
    return PeriodMatrix(*entries)


def random_family_params(family: FamilyId, m: int, rng: np.random.Generator) -> tuple[complex, complex]:
    """Parameters for which ``family_period_matrix`` lands in H_2 (rejection sampling)."""
    while True:
        p = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.5, 2.5))
        q = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.5, 2.5))
        if family == INFINITY:
            # keep tau22 = (tau - (m-2) z)/(m-1) in the upper half plane
            q = complex(q.real, rng.uniform(-0.5, 0.5) * p.imag / max(m - 1, 1))
        try:
            family_period_matrix(family, m, (p, q))
        except NotInSiegel:
            continue
        return p, q


def family_torus_point(family: FamilyId, m: int, params) -> tuple[complex, complex, complex]:
    """Base point T = j(e2(tau)) of the Mumford family."""
    return j_map(e2_map(family_period_matrix(family, m, params)))


@dataclass(frozen=True)
class SubvarietyMatrixData:
    Mv: tuple[tuple[Fraction, ...], ...]
    J: tuple[tuple[int, ...], ...]

    def criterion_matrix(self, m: int) -> list[list[Fraction]]:
        """m*id - J*Mv, exact."""
        return [
            [(m if i == j else 0) - sum(self.J[i][k] * self.Mv[k][j] for k in range(4)) for j in range(4)]
            for i in range(4)
        ]


J_STANDARD = ((0, 0, -1, 0), (0, 0, 0, -1), (1, 0, 0, 0), (0, 1, 0, 0))


def build_Mv(v: DiscriminantVector) -> SubvarietyMatrixData:
    a, b, c, d, e = v.coefficients()
    m = v.m
    lo, hi = Fraction(b - m, 2), Fraction(b + m, 2)
    F = Fraction
    Mv = (
        (F(0), F(d), -lo, F(a)),
        (F(-d), F(0), F(-c), hi),
        (lo, F(c), F(0), F(-e)),
        (F(-a), -hi, F(e), F(0)),
    )
    return SubvarietyMatrixData(Mv, J_STANDARD)


def basis_embedding(tau: PeriodMatrix) -> np.ndarray:
    """2x4 complex matrix (id tau): the images of the standard basis of R^4 in C^2."""
    return np.array([[1, 0, tau.tau11, tau.tau12], [0, 1, tau.tau12, tau.tau22]], dtype=complex)


def _realify(cols: np.ndarray) -> np.ndarray:
    return np.vstack([cols.real, cols.imag])


def line_distance(u, w) -> float:
    """sin of the angle between the complex lines C u and C w."""
    u, w = np.asarray(u, dtype=complex), np.asarray(w, dtype=complex)
    return float(abs(u[0] * w[1] - u[1] * w[0]) / (np.linalg.norm(u) * np.linalg.norm(w)))


def subvariety_image(v: DiscriminantVector, tau: PeriodMatrix, tol: float = 1e-10) -> np.ndarray:
    """Unit vector spanning the image of m*id - J*Mv, read in the basis (id tau)."""
    res = abs(humbert_residual(v, tau))
    if res >= tol:
        raise ValueError(f"tau is not on H_2(v): residual {res:.3g}")
    N = np.array(build_Mv(v).criterion_matrix(v.m), dtype=float)
    cols = basis_embedding(tau) @ N
    sv = np.linalg.svd(_realify(cols), compute_uv=False)
    rank = int(np.sum(sv > 1e-9 * max(sv[0], 1.0)))
    if rank != 2:
        raise DegenerateImage(f"image has real rank {rank}, expected 2")
    w = cols[:, np.argmax(np.linalg.norm(cols, axis=0))]
    for col in cols.T:
        if np.linalg.norm(col) > 1e-9 * np.linalg.norm(w) and line_distance(col, w) > 1e-8:
            raise DegenerateImage("image is not a complex line")
    w = w / np.linalg.norm(w)
    # fix the phase so the first nonzero coordinate is real positive
    lead = w[0] if abs(w[0]) > 1e-12 else w[1]
    return w * (abs(lead) / lead)


def symplectic_form(x, y) -> int:
    """E(x, y) = x1 . y2 - x2 . y1 for x = (x1, y1), y = (x2, y2) in Z^2 + Z^2."""
    return int(x[0] * y[2] + x[1] * y[3] - x[2] * y[0] - x[3] * y[1])


def _minors_gcd(u, w) -> int:
    return math.gcd(*(u[i] * w[j] - u[j] * w[i] for i, j in itertools.combinations(range(4), 2)))


def _in_span(u, w, h) -> bool:
    """Whether h lies in the rational span of u and w (all 3x3 minors vanish)."""
    for cols in itertools.combinations(range(4), 3):
        (a, b, c), (d, e, f), (g, k, l) = ([x[i] for i in cols] for x in (u, w, h))
        if a * (e * l - f * k) - b * (d * l - f * g) + c * (d * k - e * g):
            return False
    return True


@dataclass(frozen=True)
class SublatticeWithForm:
    """Rank-2 saturated sublattice of Z^4 with the restricted symplectic form."""

    basis: tuple[tuple[int, ...], tuple[int, ...]]
    index: int  # index of the lattice spanned by ``basis`` in its saturation

    def form(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        e = Fraction(symplectic_form(*self.basis), self.index)
        return ((Fraction(0), e), (-e, Fraction(0)))

    def pfaffian(self) -> int:
        value = self.form()[0][1]
        assert value.denominator == 1
        return abs(int(value))


def lattice_in_line(w, tau: PeriodMatrix, bound: int, tol: float = 1e-9) -> SublatticeWithForm:
    """Exhaustive search of the box |lambda_i| <= bound for lambda in Z^4 whose image
    under (id tau) lies on the complex line C w."""
    g = basis_embedding(tau)
    coeff = g[0] * w[1] - g[1] * w[0]  # lambda in line  <=>  sum lambda_k coeff_k = 0
    r = np.arange(-bound, bound + 1)
    grid = np.stack(np.meshgrid(r, r, r, r, indexing="ij"), axis=-1).reshape(-1, 4)
    vals = grid @ coeff
    scale = np.abs(coeff).sum()
    hits = grid[np.abs(vals) < tol * scale]
    hits = [tuple(int(x) for x in h) for h in hits if any(h)]
    if not hits:
        raise LatticeNotFound("no lattice vectors on the line inside the search box")
    hits.sort(key=lambda h: (sum(x * x for x in h), h))
    first = hits[0]
    second = next((h for h in hits if _minors_gcd(first, h) != 0), None)
    if second is None:
        raise LatticeNotFound("lattice vectors on the line have rank 1 inside the search box")
    for h in hits:
        if not _in_span(first, second, h):
            raise LatticeNotFound("hits span more than a plane; tolerance too loose or tau off H_2(v)")
    return SublatticeWithForm((first, second), _minors_gcd(first, second))


def exponent_of_subtorus(v: DiscriminantVector, tau: PeriodMatrix, bound: int | None = None) -> int:
    """Degree of the principal polarization restricted to the curve W/(W meet Lambda_tau)."""
    w = subvariety_image(v, tau)
    if bound is None:
        bound = max(v.m, *(abs(x) for x in v.coefficients())) + 1
    return lattice_in_line(w, tau, bound).pfaffian()


def closed_form_lattice(m: int, family: FamilyId) -> SublatticeWithForm:
    """W meet Lambda_tau in closed form for the two family shapes."""
    check_family(m, family)
    if family == INFINITY:
        basis = ((1, -1, 0, 0), (0, 0, 1, -(m - 1)))
    else:
        c, e = family
        basis = ((1, 0, 0, 0), (0, e, m, c))
    return SublatticeWithForm(basis, _minors_gcd(*basis))


def expected_line(family: FamilyId) -> tuple[int, int]:
    return (-1, 1) if family == INFINITY else (1, 0)


def exp_image_locus(family: FamilyId) -> LocusRelation:
    """Image of W_i under (w1, w2) -> (V, U) = (e(w1), e(w2))."""
    if family == INFINITY:
        return LocusRelation((1, 1), ("V", "U"))
    return LocusRelation((0, 1), ("V", "U"))


def exp_map(w) -> tuple[complex, complex]:
    return tuple(cmath.exp(2j * math.pi * complex(x)) for x in w)


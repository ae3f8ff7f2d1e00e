"""Period matrices, discriminant vectors and Humbert-surface membership."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class NotInSiegel(ValueError):
    """The imaginary part of a period matrix is not positive definite."""


class SamplingFailed(RuntimeError):
    pass


@dataclass(frozen=True)
class DiscriminantVector:
    """Primitive integer vector (a, b, c, d, e) with b^2 - 4(ac + de) = m^2."""

    a: int
    b: int
    c: int
    d: int
    e: int
    m: int

    def __post_init__(self):
        if self.m <= 0:
            raise ValueError(f"m must be positive, got {self.m}")
        if self.discriminant() != self.m * self.m:
            raise ValueError(
                f"{self.coefficients()} has discriminant {self.discriminant()}, not m^2 = {self.m ** 2}"
            )
        if math.gcd(*self.coefficients()) != 1:
            raise ValueError(f"{self.coefficients()} is not primitive")

    @classmethod
    def from_coefficients(cls, a: int, b: int, c: int, d: int, e: int) -> DiscriminantVector:
        disc = b * b - 4 * (a * c + d * e)
        m = math.isqrt(disc) if disc > 0 else 0
        if m * m != disc or m == 0:
            raise ValueError(f"b^2 - 4(ac + de) = {disc} is not a positive square")
        return cls(a, b, c, d, e, m)

    def coefficients(self) -> tuple[int, int, int, int, int]:
        return (self.a, self.b, self.c, self.d, self.e)

    def discriminant(self) -> int:
        return self.b * self.b - 4 * (self.a * self.c + self.d * self.e)

    def locus_invariant(self) -> int:
        """b^2 - 4ac + 4de.  With the d-term written as d(tau11 tau22 - tau12^2) this,
        not the discriminant, decides whether H_2(v) has points: it must be positive.
        The two agree when d e = 0."""
        return self.b * self.b - 4 * self.a * self.c + 4 * self.d * self.e

    def has_points(self) -> bool:
        return self.locus_invariant() > 0

    def normalized(self) -> DiscriminantVector:
        """Sign representative whose first nonzero coordinate is positive."""
        coeffs = self.coefficients()
        lead = next(x for x in coeffs if x != 0)
        if lead > 0:
            return self
        return DiscriminantVector(*(-x for x in coeffs), self.m)

    def __iter__(self):
        return iter(self.coefficients())


@dataclass(frozen=True)
class PeriodMatrix:
    """Symmetric 2x2 complex matrix [[tau11, tau12], [tau12, tau22]] in the Siegel space."""

    tau11: complex
    tau12: complex
    tau22: complex

    def __post_init__(self):
        for name in ("tau11", "tau12", "tau22"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if not in_siegel(self.tau11, self.tau12, self.tau22):
            raise NotInSiegel(
                f"imaginary part of [[{self.tau11}, {self.tau12}], [{self.tau12}, {self.tau22}]] "
                "is not positive definite"
            )

    @classmethod
    def from_array(cls, arr) -> PeriodMatrix:
        arr = np.asarray(arr, dtype=complex)
        if arr.shape != (2, 2) or arr[0, 1] != arr[1, 0]:
            raise ValueError("expected a symmetric 2x2 matrix")
        return cls(arr[0, 0], arr[0, 1], arr[1, 1])

    def as_array(self) -> np.ndarray:
        return np.array([[self.tau11, self.tau12], [self.tau12, self.tau22]], dtype=complex)

    def imag_det(self) -> float:
        return self.tau11.imag * self.tau22.imag - self.tau12.imag ** 2


def in_siegel(tau11: complex, tau12: complex, tau22: complex) -> bool:
    y11, y12, y22 = complex(tau11).imag, complex(tau12).imag, complex(tau22).imag
    return y11 > 0 and y22 > 0 and y11 * y22 - y12 * y12 > 0


def enumerate_vectors(m: int, coefficient_bound: int) -> list[DiscriminantVector]:
    """All primitive sign-normalized vectors of discriminant m^2 in the box |x_i| <= bound.

    Loops over (a, b, c, d) and solves de = (b^2 - m^2)/4 - ac for e.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    if coefficient_bound < m:
        raise ValueError("coefficient_bound must be at least m")
    bound = coefficient_bound
    rng = range(-bound, bound + 1)
    found = set()
    for b in rng:
        # b^2 = m^2 mod 4 forces b = m mod 2
        if (b - m) % 2:
            continue
        target = (b * b - m * m) // 4
        for a, c, d in itertools.product(rng, rng, rng):
            rest = target - a * c
            if d == 0:
                if rest != 0:
                    continue
                candidates: Iterable[int] = rng
            else:
                if rest % d:
                    continue
                e = rest // d
                if abs(e) > bound:
                    continue
                candidates = (e,)
            for e in candidates:
                coeffs = (a, b, c, d, e)
                if math.gcd(*coeffs) != 1:
                    continue
                lead = next(x for x in coeffs if x != 0)
                if lead < 0:
                    coeffs = tuple(-x for x in coeffs)
                found.add(coeffs)
    return [DiscriminantVector(*coeffs, m) for coeffs in sorted(found)]


def humbert_residual(v: Sequence[int] | DiscriminantVector, tau: PeriodMatrix) -> complex:
    """Left side of the Humbert equation; zero exactly on H_2(v).

    ``v`` may be any integer 5-vector, which is convenient for linearity checks.
    """
    a, b, c, d, e = tuple(v)[:5]
    t11, t12, t22 = tau.tau11, tau.tau12, tau.tau22
    return a * t11 + b * t12 + c * t22 + d * (t11 * t22 - t12 * t12) + e


def _draw(rng: np.random.Generator) -> complex:
    return complex(rng.uniform(-0.5, 0.5), rng.uniform(0.5, 2.5))


def _solve_candidates(v: DiscriminantVector, rng: np.random.Generator):
    """Candidate (tau11, tau12, tau22) triples solving the Humbert equation."""
    a, b, c, d, e = v.coefficients()
    if a == 0 and d == 0:
        t22 = _draw(rng)
        t11 = _draw(rng)
        yield t11, -(c * t22 + e) / b, t22
        return
    # linear in tau11 once tau12, tau22 are fixed
    t12, t22 = _draw(rng), _draw(rng)
    denom = a + d * t22
    if denom != 0:
        yield -(b * t12 + c * t22 - d * t12 * t12 + e) / denom, t12, t22
    # same with the roles of tau11 and tau22 exchanged
    t11, t12 = _draw(rng), _draw(rng)
    denom = c + d * t11
    if denom != 0:
        yield t11, t12, -(a * t11 + b * t12 - d * t12 * t12 + e) / denom
    # quadratic (or linear when d = 0) in tau12
    t11, t22 = _draw(rng), _draw(rng)
    const = a * t11 + c * t22 + d * t11 * t22 + e
    if d == 0:
        if b != 0:
            yield t11, -const / b, t22
    else:
        disc = np.sqrt(complex(b * b + 4 * d * const))
        for root in ((b + disc) / (2 * d), (b - disc) / (2 * d)):
            yield t11, complex(root), t22


def _split_candidate(v: DiscriminantVector, rng: np.random.Generator, spread: float):
    """Solve with tau = X + iY split into real and imaginary parts.

    For fixed X the imaginary part of the equation is the plane
    (a + d X22) Y11 + (b - 2 d X12) Y12 + (c + d X11) Y22 = 0 and the real part
    fixes d det Y = k(X).  The plane meets the positive cone iff its discriminant
    b^2 - 4ac + 4de - 4dk is positive, so k is drawn from that window and X11 solved from it.
    """
    a, b, c, d, e = v.coefficients()
    x11, x12, x22 = rng.uniform(-spread, spread, 3)
    if d == 0:
        target = 0.0
    else:
        target = rng.uniform(0.1, 0.9) * v.locus_invariant() / (4 * d)
    rest = b * x12 - d * x12 * x12 + e  # k = x11 (a + d x22) + c x22 + rest
    if a + d * x22 != 0:
        x11 = (target - c * x22 - rest) / (a + d * x22)
    elif c + d * x11 != 0:
        x22 = (target - a * x11 - rest) / (c + d * x11)
    else:
        return None
    k = a * x11 + b * x12 + c * x22 + d * (x11 * x22 - x12 * x12) + e
    if d != 0 and k / d <= 0:
        return None
    alpha, beta, gamma = a + d * x22, b - 2 * d * x12, c + d * x11
    disc = beta * beta - 4 * alpha * gamma
    if disc <= 0:
        return None
    # Y = [[1, t], [t, s]] on the plane; s > t^2 holds strictly between the roots
    if gamma != 0:
        r1, r2 = ((-beta + sgn * math.sqrt(disc)) / (2 * gamma) for sgn in (1, -1))
        t = r1 + rng.uniform(0.2, 0.8) * (r2 - r1)
        y11, y12, y22 = 1.0, t, -(alpha + beta * t) / gamma
    else:
        t = -alpha / beta
        y11, y12, y22 = 1.0, t, t * t + rng.uniform(0.5, 2.5)
    det = y11 * y22 - y12 * y12
    if y11 <= 0 or det <= 0:
        return None
    scale = math.sqrt(k / d / det) if d != 0 else 1.0
    y11, y12, y22 = scale * y11, scale * y12, scale * y22
    return complex(x11, y11), complex(x12, y12), complex(x22, y22)


def sample_point(v: DiscriminantVector, seed: int, max_attempts: int = 100) -> PeriodMatrix:
    """Random point of H_2(v), deterministic in ``seed``.

    Real parts are drawn from [-0.5, 0.5] and imaginary parts from [0.5, 2.5];
    the remaining entry is solved from the Humbert equation.  When no such draw
    lands in H_2 (H_2(v) can sit far from that box) the real/imaginary split
    solver takes over with a real-part spread that doubles every ten attempts.
    """
    if v.locus_invariant() <= 0:
        raise SamplingFailed(
            f"H_2{v.coefficients()} is empty: b^2 - 4ac + 4de = {v.locus_invariant()} <= 0"
        )
    rng = np.random.default_rng(seed)
    for attempt in range(max_attempts):
        cands = list(_solve_candidates(v, rng))
        cands.append(_split_candidate(v, rng, 0.5 * 2 ** (attempt // 10)))
        for cand in cands:
            if cand is None or not in_siegel(*cand):
                continue
            tau = PeriodMatrix(*cand)
            if abs(humbert_residual(v, tau)) < 1e-12:
                return tau
    raise SamplingFailed(f"no point of H_2{v.coefficients()} found in {max_attempts} attempts")

"""Exact arithmetic in Q(rho), rho = exp(2 pi i / m), and Laurent polynomials over it.

Elements are integer coefficient vectors on the powers rho^0, ..., rho^(m-1), i.e.
polynomials modulo x^m - 1.  Equality reduces modulo the m-th cyclotomic polynomial.
"""
from __future__ import annotations

import cmath
import math
from functools import lru_cache


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division of integer polynomials (lowest degree first) by a monic ``den``."""
    num = list(num)
    dd = len(den) - 1
    if len(num) - 1 < dd:
        return [0], num
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        coef = num[i]
        if coef:
            quot[i - dd] = coef
            for j, dj in enumerate(den):
                num[i - dd + j] -= coef * dj
    return quot, num[:dd] or [0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, lowest degree first."""
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    return tuple(poly)


class CyclotomicElement:
    __slots__ = ("m", "coeffs", "_key")

    def __init__(self, m: int, coeffs):
        coeffs = tuple(int(x) for x in coeffs)
        if len(coeffs) != m:
            raise ValueError(f"expected {m} coefficients, got {len(coeffs)}")
        self.m = m
        self.coeffs = coeffs
        self._key = None

    @classmethod
    def zero(cls, m: int) -> CyclotomicElement:
        return cls(m, [0] * m)

    @classmethod
    def root(cls, m: int, k: int = 1) -> CyclotomicElement:
        """rho^k."""
        coeffs = [0] * m
        coeffs[k % m] = 1
        return cls(m, coeffs)

    def reduced(self) -> tuple[int, ...]:
        """Canonical form: remainder modulo Phi_m, padded to degree phi(m) - 1."""
        if self._key is None:
            phi = cyclotomic_polynomial(self.m)
            _, rem = _poly_divmod(list(self.coeffs), list(phi))
            deg = len(phi) - 1
            self._key = tuple(rem) + (0,) * (deg - len(rem))
        return self._key

    def is_zero(self) -> bool:
        return not any(self.reduced())

    def _check(self, other: CyclotomicElement):
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        if other.m != self.m:
            raise ValueError("elements of different cyclotomic fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CyclotomicElement(self.m, [x + y for x, y in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return CyclotomicElement(self.m, [-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        m = self.m
        out = [0] * m
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        out[(i + j) % m] += x * y
        return CyclotomicElement(m, out)

    def __eq__(self, other):
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        return self.m == other.m and self.reduced() == other.reduced()

    def __hash__(self):
        return hash((self.m, self.reduced()))

    def root_of_unity_exponent(self) -> int | None:
        """k with self == rho^k, or None."""
        for k in range(self.m):
            if self == CyclotomicElement.root(self.m, k):
                return k
        return None

    def inverse_root(self) -> CyclotomicElement:
        k = self.root_of_unity_exponent()
        if k is None:
            raise ValueError(f"{self} is not a root of unity")
        return CyclotomicElement.root(self.m, -k)

    def to_complex(self) -> complex:
        return sum(
            (x * cmath.exp(2j * math.pi * k / self.m) for k, x in enumerate(self.coeffs) if x), 0j
        )

    def __repr__(self):
        terms = [f"{x}*rho^{k}" for k, x in enumerate(self.reduced()) if x]
        return " + ".join(terms) if terms else "0"


class LaurentPoly:
    """Finite Laurent polynomial in t with coefficients in Q(rho)."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: dict[int, CyclotomicElement] | None = None):
        self.m = m
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    @classmethod
    def monomial(cls, m: int, exponent: int, coeff: CyclotomicElement) -> LaurentPoly:
        return cls(m, {exponent: coeff})

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return LaurentPoly(self.m, out)

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        out: dict[int, CyclotomicElement] = {}
        for i, x in self.terms.items():
            for j, y in other.terms.items():
                p = x * y
                out[i + j] = out[i + j] + p if i + j in out else p
        return LaurentPoly(self.m, out)

    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int | None:
        """Lowest exponent with a nonzero coefficient; None for the zero polynomial."""
        return min(self.terms) if self.terms else None

    def limit_at_zero(self) -> CyclotomicElement | None:
        """Value as t -> 0, or None when the polynomial has a pole there."""
        order = self.order()
        if order is None:
            return CyclotomicElement.zero(self.m)
        if order < 0:
            return None
        return self.terms.get(0, CyclotomicElement.zero(self.m))

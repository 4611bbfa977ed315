"""Exact phases and rational combinations of roots of unity.

A :class:`Phase` is a point on the unit circle.  Phases produced by the
library itself are always *exact* roots of unity, stored as a reduced
rotation count ``k/p`` (meaning ``exp(2*pi*i*k/p)``); user supplied phases
may instead be approximate unit complex numbers, compared within
``APPROX_TOL``.  Exact phases multiply, invert, take roots and compare
without any floating point at all.

:class:`RootSum` is the ring of finite rational linear combinations of
roots of unity.  Zero testing reduces the element modulo the appropriate
cyclotomic polynomial, so equality of inner products computed from exact
phases is decided exactly.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

APPROX_TOL = 1e-12


class PhaseError(ValueError):
    """A value does not describe a usable unit phase."""


@dataclass(frozen=True)
class Phase:
    """A unit complex number, exact (rational turns) or approximate.

    Exactly one of ``turns`` / ``approx`` is set.  ``turns`` is reduced to
    ``[0, 1)`` so structural equality of exact phases is semantic equality.
    """

    turns: Fraction | None = None
    approx: complex | None = None

    def __post_init__(self):
        if (self.turns is None) == (self.approx is None):
            raise PhaseError("phase needs exactly one of turns/approx")
        if self.turns is not None and not 0 <= self.turns < 1:
            object.__setattr__(self, "turns", self.turns % 1)
        if self.approx is not None and abs(abs(self.approx) - 1.0) > APPROX_TOL:
            raise PhaseError(f"|z| = {abs(self.approx)} is not 1 within {APPROX_TOL}")

    @staticmethod
    def exact(num: int, den: int = 1) -> Phase:
        """The root of unity exp(2*pi*i*num/den)."""
        return Phase(turns=Fraction(num, den) % 1)

    @staticmethod
    def from_complex(z: complex) -> Phase:
        return Phase(approx=complex(z))

    @property
    def is_exact(self) -> bool:
        return self.turns is not None

    def as_complex(self) -> complex:
        if self.turns is not None:
            return cmath.exp(2j * cmath.pi * float(self.turns))
        return self.approx

    def is_one(self) -> bool:
        if self.turns is not None:
            return self.turns == 0
        return abs(self.approx - 1.0) <= APPROX_TOL

    def __mul__(self, other: Phase) -> Phase:
        if not isinstance(other, Phase):
            return NotImplemented
        if self.turns is not None and other.turns is not None:
            return Phase(turns=(self.turns + other.turns) % 1)
        return Phase(approx=self.as_complex() * other.as_complex())

    def conjugate(self) -> Phase:
        if self.turns is not None:
            return Phase(turns=(-self.turns) % 1)
        return Phase(approx=self.approx.conjugate())

    def __pow__(self, k: int) -> Phase:
        if self.turns is not None:
            return Phase(turns=(self.turns * k) % 1)
        return Phase(approx=self.as_complex() ** k)

    def root(self, p: int) -> Phase:
        """Principal p-th root: rotation k/q becomes k/(p*q)."""
        if p < 1:
            raise PhaseError("root order must be >= 1")
        if self.turns is not None:
            return Phase(turns=self.turns / p)
        r, phi = cmath.polar(self.approx)
        return Phase(approx=cmath.rect(1.0, (phi % (2 * cmath.pi)) / p))


ONE = Phase.exact(0)


def phases_equal(a: Phase, b: Phase, tol: float = APPROX_TOL) -> bool:
    """Semantic equality: exact vs exact compares rotations, else within tol."""
    if a.is_exact and b.is_exact:
        return a.turns == b.turns
    return abs(a.as_complex() - b.as_complex()) <= tol


def _poly_divmod(num: list[Fraction], den: list[int]) -> tuple[list[Fraction], list[Fraction]]:
    # Long division; `den` monic with integer coefficients, ascending order.
    num = list(num)
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        if c:
            q[i] = c
            for k, d in enumerate(den):
                num[i + k] -= c * d
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, ascending order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return (-1, 1)
    poly: list[Fraction] = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert all(c == 0 for c in rem)
    assert all(c.denominator == 1 for c in poly)
    return tuple(int(c) for c in poly)


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a // gcd(a, b) * b


class RootSum:
    """A finite sum ``sum_t  c_t * exp(2*pi*i*t)`` with rational c_t, t.

    Immutable by convention.  Equality and zero tests are exact, via
    reduction modulo the cyclotomic polynomial at the common order.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[Fraction, Fraction] | None = None):
        cleaned: dict[Fraction, Fraction] = {}
        for turn, coeff in (terms or {}).items():
            if coeff:
                key = turn % 1
                cleaned[key] = cleaned.get(key, Fraction(0)) + coeff
        self._terms = {t: c for t, c in cleaned.items() if c}

    @staticmethod
    def zero() -> RootSum:
        return RootSum()

    @staticmethod
    def one() -> RootSum:
        return RootSum({Fraction(0): Fraction(1)})

    @staticmethod
    def rational(q) -> RootSum:
        return RootSum({Fraction(0): Fraction(q)})

    @staticmethod
    def from_phase(phase: Phase) -> RootSum:
        if not phase.is_exact:
            raise PhaseError("exact arithmetic requires an exact phase")
        return RootSum({phase.turns: Fraction(1)})

    @property
    def terms(self) -> dict[Fraction, Fraction]:
        return dict(self._terms)

    def __add__(self, other: RootSum) -> RootSum:
        merged = dict(self._terms)
        for t, c in other._terms.items():
            merged[t] = merged.get(t, Fraction(0)) + c
        return RootSum(merged)

    def __neg__(self) -> RootSum:
        return RootSum({t: -c for t, c in self._terms.items()})

    def __sub__(self, other: RootSum) -> RootSum:
        return self + (-other)

    def __mul__(self, other: RootSum) -> RootSum:
        out: dict[Fraction, Fraction] = {}
        for t1, c1 in self._terms.items():
            for t2, c2 in other._terms.items():
                key = (t1 + t2) % 1
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return RootSum(out)

    def scaled(self, q) -> RootSum:
        q = Fraction(q)
        return RootSum({t: c * q for t, c in self._terms.items()})

    def conjugate(self) -> RootSum:
        return RootSum({(-t) % 1: c for t, c in self._terms.items()})

    def is_zero(self) -> bool:
        if not self._terms:
            return True
        order = 1
        for t in self._terms:
            order = _lcm(order, t.denominator)
        coeffs = [Fraction(0)] * order
        for t, c in self._terms.items():
            coeffs[int(t * order)] += c
        _, rem = _poly_divmod(coeffs, list(cyclotomic_polynomial(order)))
        return all(c == 0 for c in rem)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RootSum):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def as_complex(self) -> complex:
        return sum(
            (float(c) * cmath.exp(2j * cmath.pi * float(t)) for t, c in self._terms.items()),
            0j,
        )

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*e({t})" for t, c in sorted(self._terms.items()))
        return f"RootSum({body or '0'})"

"""Exact elements of Q(zeta_60).

Values are kept as sparse sums c_k zeta^k (k mod 60) for cheap arithmetic and
reduced to the power basis 1, zeta, ..., zeta^15 modulo the 60th cyclotomic
polynomial for equality and output.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Union

CONDUCTOR = 60

Rational = Union[int, Fraction]


def _polydiv_exact(p: list[int], q: list[int]) -> list[int]:
    # coefficients low -> high, q monic
    p = p[:]
    out = [0] * (len(p) - len(q) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = p[i + len(q) - 1]
        out[i] = c
        for j, y in enumerate(q):
            p[i + j] -= c * y
    assert not any(p), "inexact division"
    return out


def cyclotomic_polynomial(n: int) -> list[int]:
    """Integer coefficients of Phi_n, lowest degree first."""
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p = _polydiv_exact(p, cyclotomic_polynomial(d))
    return p


PHI = cyclotomic_polynomial(CONDUCTOR)
DEGREE = len(PHI) - 1  # 16


def _reduce(vec: list) -> list:
    vec = list(vec)
    for i in range(len(vec) - 1, DEGREE - 1, -1):
        c = vec[i]
        if c:
            for j, y in enumerate(PHI):
                vec[i - DEGREE + j] -= c * y
    return vec[:DEGREE]


# zeta^k reduced to the power basis, k = 0..59
_POWERS = [_reduce([0] * k + [1]) if k >= DEGREE else [int(j == k) for j in range(DEGREE)] for k in range(CONDUCTOR)]


class Cyclotomic:
    def __init__(self, terms: Mapping[int, Rational] | None = None) -> None:
        t: dict[int, Fraction] = {}
        for k, c in (terms or {}).items():
            if c:
                k %= CONDUCTOR
                v = t.get(k, 0) + Fraction(c)
                if v:
                    t[k] = v
                else:
                    t.pop(k, None)
        self._terms = t

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> Cyclotomic:
        # trusted: keys reduced mod CONDUCTOR, values Fractions
        out = cls.__new__(cls)
        out._terms = {k: c for k, c in terms.items() if c}
        return out

    @classmethod
    def rational(cls, q: Rational) -> Cyclotomic:
        return cls({0: q})

    @classmethod
    def zeta(cls, k: int, n: int = CONDUCTOR) -> Cyclotomic:
        """zeta_n^k."""
        if CONDUCTOR % n:
            raise ValueError(f"order {n} does not divide the conductor {CONDUCTOR}")
        return cls({(k * (CONDUCTOR // n)) % CONDUCTOR: 1})

    @cached_property
    def coefficients(self) -> tuple[Fraction, ...]:
        """Canonical coordinates on 1, zeta_60, ..., zeta_60^15."""
        out = [Fraction(0)] * DEGREE
        for k, c in self._terms.items():
            for j, v in enumerate(_POWERS[k]):
                if v:
                    out[j] += c * v
        return tuple(out)

    def _plain(self) -> Fraction | None:
        # value when only zeta^0 occurs, skipping the reduction
        t = self._terms
        if not t:
            return Fraction(0)
        if len(t) == 1 and 0 in t:
            return t[0]
        return None

    @property
    def is_rational(self) -> bool:
        return self._plain() is not None or not any(self.coefficients[1:])

    def to_fraction(self) -> Fraction:
        q = self._plain()
        if q is not None:
            return q
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self.coefficients[0]

    def __complex__(self) -> complex:
        return sum(float(c) * cmath.exp(2j * cmath.pi * k / CONDUCTOR) for k, c in self._terms.items()) + 0j

    def conj(self) -> Cyclotomic:
        return Cyclotomic._raw({-k % CONDUCTOR: c for k, c in self._terms.items()})

    def __add__(self, other: Cyclotomic | Rational) -> Cyclotomic:
        other = _lift(other)
        t = dict(self._terms)
        for k, c in other._terms.items():
            t[k] = t[k] + c if k in t else c
        return Cyclotomic._raw(t)

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: Cyclotomic | Rational) -> Cyclotomic:
        return self + (-_lift(other))

    def __rsub__(self, other: Rational) -> Cyclotomic:
        return _lift(other) - self

    def __mul__(self, other: Cyclotomic | Rational) -> Cyclotomic:
        if isinstance(other, (int, Fraction)):
            return Cyclotomic._raw({k: c * other for k, c in self._terms.items()})
        t: dict[int, Fraction] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = (k1 + k2) % CONDUCTOR
                t[k] = t[k] + c1 * c2 if k in t else c1 * c2
        return Cyclotomic._raw(t)

    __rmul__ = __mul__

    def __truediv__(self, q: Rational) -> Cyclotomic:
        q = Fraction(q)
        return Cyclotomic({k: c / q for k, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            p = self._plain()
            if p is not None:
                return p == other
            other = Cyclotomic.rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        p, q = self._plain(), other._plain()
        if p is not None and q is not None:
            return p == q
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __bool__(self) -> bool:
        return any(self.coefficients)

    def to_json(self) -> str | list[str]:
        if self.is_rational:
            return str(self.coefficients[0])
        return [str(c) for c in self.coefficients]

    def __repr__(self) -> str:
        if self.is_rational:
            return str(self.coefficients[0])
        parts = [f"{c}*z^{j}" if j else str(c) for j, c in enumerate(self.coefficients) if c]
        return "(" + " + ".join(parts) + ")"


def _lift(x: Cyclotomic | Rational) -> Cyclotomic:
    return x if isinstance(x, Cyclotomic) else Cyclotomic.rational(x)


ZERO = Cyclotomic()
ONE = Cyclotomic.rational(1)

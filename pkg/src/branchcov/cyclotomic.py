"""Exact arithmetic in the cyclotomic field Q(zeta_d).

Elements are stored as rational coefficient vectors in the power basis
``1, zeta, ..., zeta^(phi(d)-1)`` after reduction modulo the d-th cyclotomic
polynomial, so equality is coefficientwise and division is always available
for nonzero elements.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple


def _trim(p: List[Fraction]) -> List[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: Sequence, b: Sequence) -> List[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_divmod(a: Sequence, b: Sequence) -> Tuple[List[Fraction], List[Fraction]]:
    a = _trim([Fraction(x) for x in a])
    b = _trim([Fraction(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / b[-1]
        q[shift] = f
        for i, y in enumerate(b):
            a[i + shift] -= f * y
        _trim(a)
    return _trim(q), a


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> Tuple[Fraction, ...]:
    """Coefficients (ascending) of Phi_d, from x^d - 1 = prod_{e | d} Phi_e."""
    if d < 1:
        raise ValueError("d must be >= 1")
    num = [Fraction(-1)] + [Fraction(0)] * (d - 1) + [Fraction(1)]
    for e in range(1, d):
        if d % e == 0:
            num, r = _poly_divmod(num, cyclotomic_polynomial(e))
            assert not r
    return tuple(num)


def euler_phi(d: int) -> int:
    return len(cyclotomic_polynomial(d)) - 1


class Cyclotomic:
    """Element of Q(zeta_d) with zeta_d = exp(2*pi*i/d)."""

    __slots__ = ("d", "coeffs")

    def __init__(self, d: int, coeffs: Sequence = ()):
        self.d = int(d)
        _, r = _poly_divmod([Fraction(c) for c in coeffs], cyclotomic_polynomial(self.d))
        n = euler_phi(self.d)
        self.coeffs = tuple(r + [Fraction(0)] * (n - len(r)))

    @classmethod
    def zeta_power(cls, d: int, e: int) -> "Cyclotomic":
        e %= d
        return cls(d, [0] * e + [1])

    @classmethod
    def rational(cls, d: int, q) -> "Cyclotomic":
        return cls(d, [q])

    def _lift(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.d != self.d:
                raise ValueError("mixing different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.d, [other])
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.d, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.d, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.d, _poly_mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self == 0:
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        # extended Euclid on (self, Phi_d)
        r0, r1 = list(cyclotomic_polynomial(self.d)), _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            qs = _poly_mul(q, s1)
            n = max(len(s0), len(qs))
            s_new = [(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0) for i in range(n)]
            s0, s1 = s1, _trim([Fraction(x) for x in s_new])
        # r0 is a nonzero constant gcd
        c = r0[0]
        return Cyclotomic(self.d, [x / c for x in s0])

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Cyclotomic(self.d, [1])
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.d, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.d)
        return complex(sum(float(c) * z**i for i, c in enumerate(self.coeffs)))

    def to_mpc(self):
        """High-precision complex value at the current mpmath precision."""
        import mpmath

        z = mpmath.expjpi(mpmath.mpf(2) / self.d)
        out = mpmath.mpc(0)
        for i, c in enumerate(self.coeffs):
            if c:
                out += mpmath.mpf(c.numerator) / c.denominator * z**i
        return out

    def conjugate(self) -> "Cyclotomic":
        out = Cyclotomic(self.d, [self.coeffs[0]])
        for i, c in enumerate(self.coeffs[1:], start=1):
            out = out + Cyclotomic.zeta_power(self.d, -i) * c
        return out

    def __repr__(self):
        terms = [f"{c}" + (f"*z^{i}" if i else "") for i, c in enumerate(self.coeffs) if c]
        return f"Q(z{self.d})[" + (" + ".join(terms) or "0") + "]"

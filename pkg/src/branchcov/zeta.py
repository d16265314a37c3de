"""Bernoulli numbers, zeta at non-positive integers, and the R-genus.

``zeta'(-n)`` for odd n is computed two independent ways:

* :func:`zeta_prime_negative` uses the logarithmic derivative of the
  functional equation,
  ``zeta'(-n)/zeta(-n) = log(2 pi) - psi(n+1) - zeta'(n+1)/zeta(n+1)``,
  with ``psi(n+1) = -gamma + H_n`` and zeta, zeta' at ``n+1 >= 2`` from an
  Euler-Maclaurin sum;
* :func:`zeta_prime_direct` differentiates the Euler-Maclaurin
  representation of zeta(s) in s and evaluates it at ``s = -n`` directly
  (the representation is valid for all s != 1).

Both routes carry explicit truncation bounds.  Numerics use mpmath ``mpf``
at a configurable working precision; only the elementary functions
(log, pi) come from mpmath.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

import mpmath
from mpmath import mpf

WORKING_DPS = 40


class PrecisionError(ArithmeticError):
    """Requested accuracy is not reachable at the working precision."""


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> Tuple[Fraction, ...]:
    B = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum(math.comb(m + 1, k) * B[k] for k in range(m))
        B.append(-s / (m + 1))
    return tuple(B)


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number with ``B_1 = -1/2``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    # grow in blocks so the cache holds few tables
    size = max(32, 1 << (n.bit_length()))
    return _bernoulli_table(size)[n]


def zeta_negative(n: int) -> Fraction:
    """``zeta(-n) = -B_{n+1}/(n+1)`` for n >= 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return -bernoulli(n + 1) / (n + 1)


def harmonic(n: int) -> Fraction:
    return sum((Fraction(1, j) for j in range(1, n + 1)), Fraction(0))


@dataclass(frozen=True)
class Bounded:
    """A high-precision value with an absolute error bound."""

    value: mpf
    bound: mpf

    def __float__(self):
        return float(self.value)


# -- Euler-Maclaurin pieces --------------------------------------------------


def _em_params(dps: int) -> Tuple[int, int]:
    # N terms summed directly, M Bernoulli corrections
    return 30, max(20, dps)


def euler_gamma(dps: int = WORKING_DPS) -> Bounded:
    """Euler's constant via ``H_N - log N - 1/(2N) + sum B_2j/(2j N^2j)``."""
    with mpmath.workdps(dps + 10):
        N, M = _em_params(dps)
        N = mpf(N)
        val = sum(1 / mpf(k) for k in range(1, int(N) + 1)) - mpmath.log(N) - 1 / (2 * N)
        for j in range(1, M + 1):
            val += mpf(bernoulli(2 * j).numerator) / bernoulli(2 * j).denominator / (2 * j * N ** (2 * j))
        b = bernoulli(2 * M + 2)
        tail = abs(mpf(b.numerator) / b.denominator) / ((2 * M + 2) * N ** (2 * M + 2))
        return Bounded(+val, 2 * tail + mpf(10) ** (-dps))


def _poch_terms(s, count: int) -> List:
    """Factors s, s+1, ..., s+count-1."""
    return [s + i for i in range(count)]


def _zeta_em(s, N: int, M: int, derivative: bool):
    """Euler-Maclaurin for zeta(s) (or its s-derivative) with N direct terms,
    M correction terms.  Returns (value, bound) where the bound is twice the
    magnitude of the first omitted correction."""
    N_ = mpf(N)
    logN = mpmath.log(N_)
    if not derivative:
        val = sum(mpf(k) ** (-s) for k in range(1, N))
        val += N_ ** (1 - s) / (s - 1) + N_ ** (-s) / 2
    else:
        val = -sum(mpf(k) ** (-s) * mpmath.log(k) for k in range(2, N))
        val += -logN * N_ ** (1 - s) / (s - 1) - N_ ** (1 - s) / (s - 1) ** 2
        val += -logN * N_ ** (-s) / 2

    def correction(j):
        b = bernoulli(2 * j)
        coef = mpf(b.numerator) / b.denominator / mpmath.factorial(2 * j)
        factors = _poch_terms(s, 2 * j - 1)
        P = mpmath.fprod(factors)
        power = N_ ** (-s - 2 * j + 1)
        if not derivative:
            return coef * P * power
        dP = mpf(0)
        for i in range(len(factors)):
            dP += mpmath.fprod(factors[:i] + factors[i + 1:])
        return coef * (dP - logN * P) * power

    for j in range(1, M + 1):
        val += correction(j)
    bound = 2 * abs(correction(M + 1))
    return val, bound


def zeta_em(s, derivative: bool = False, dps: int = WORKING_DPS) -> Bounded:
    """zeta(s) or zeta'(s) at real s != 1 by Euler-Maclaurin."""
    with mpmath.workdps(dps + 10):
        N, M = _em_params(dps)
        # the remainder estimate needs s + 2M + 1 > 0
        N = max(N, int(abs(s)) + 10)
        val, bound = _zeta_em(mpf(s), N, M, derivative)
        return Bounded(+val, bound + mpf(10) ** (-dps))


def zeta_prime_negative(n: int, dps: int = WORKING_DPS, rel_tol: float = 1e-12) -> Bounded:
    """zeta'(-n), n odd >= 1, from the functional equation."""
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be odd and >= 1")
    with mpmath.workdps(dps + 10):
        z = zeta_em(n + 1, dps=dps)
        zp = zeta_em(n + 1, derivative=True, dps=dps)
        gamma = euler_gamma(dps)
        H = harmonic(n)
        psi = -gamma.value + mpf(H.numerator) / H.denominator
        zn = zeta_negative(n)
        zn_ = mpf(zn.numerator) / zn.denominator
        ratio = mpmath.log(2 * mpmath.pi) - psi - zp.value / z.value
        val = zn_ * ratio
        # propagate bounds (first order, with slack factor 2)
        d_ratio = gamma.bound + zp.bound / abs(z.value) + abs(zp.value) * z.bound / z.value**2
        bound = 2 * abs(zn_) * d_ratio + mpf(10) ** (-dps)
        if bound > rel_tol * abs(val):
            raise PrecisionError(f"zeta'(-{n}) bound {bound} exceeds requested tolerance")
        return Bounded(+val, bound)


def zeta_prime_direct(n: int, dps: int = WORKING_DPS) -> Bounded:
    """zeta'(-n) by differentiating Euler-Maclaurin at s = -n directly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return zeta_em(-n, derivative=True, dps=dps)


def r_coefficient(n: int, dps: int = WORKING_DPS) -> Bounded:
    """Coefficient of x^n in the R-genus series.

    ``(2 zeta'(-n)/zeta(-n) + H_n) zeta(-n) / n!`` for odd n, zero for even n.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n % 2 == 0:
        return Bounded(mpf(0), mpf(0))
    with mpmath.workdps(dps + 10):
        zp = zeta_prime_negative(n, dps=dps)
        zn = zeta_negative(n)
        H = harmonic(n)
        fact = math.factorial(n)
        lin = (H * zn) / fact
        val = (2 * zp.value) / fact + mpf(lin.numerator) / lin.denominator
        bound = 2 * zp.bound / fact
        return Bounded(+val, bound)


@dataclass(frozen=True)
class RCoefficientTable:
    order: int
    entries: Tuple[Tuple[int, Bounded], ...]

    def coefficient(self, n: int) -> Bounded:
        for m, b in self.entries:
            if m == n:
                return b
        return Bounded(mpf(0), mpf(0))


def r_coefficient_table(N: int, dps: int = WORKING_DPS) -> RCoefficientTable:
    return RCoefficientTable(N, tuple((n, r_coefficient(n, dps)) for n in range(1, N + 1, 2)))


def r_genus_series(N: int, dps: int = WORKING_DPS):
    """The R-genus as a float-coefficient :class:`TruncatedSeries`."""
    from .series import TruncatedSeries

    table = r_coefficient_table(N, dps)
    return TruncatedSeries([table.coefficient(n).value for n in range(N + 1)])

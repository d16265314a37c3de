"""Truncated power series and genera evaluated on nilpotent Chern classes."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence

from .cyclotomic import Cyclotomic
from .ring import GradedClass, RingPresentation
from .zeta import bernoulli


class SeriesError(ValueError):
    pass


class TruncatedSeries:
    """``c_0 + c_1 x + ... + c_N x^N``; arithmetic is exact through order N.

    Coefficients may be ints/Fractions, :class:`Cyclotomic` or floats.
    Combining two series keeps the smaller order.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        if len(coeffs) == 0:
            raise SeriesError("a series needs at least the constant term")
        self.coeffs = tuple(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        return self.coeffs[n] if 0 <= n <= self.order else 0

    def truncate(self, N: int) -> "TruncatedSeries":
        if N > self.order:
            raise SeriesError(f"cannot extend a series of order {self.order} to {N}")
        return TruncatedSeries(self.coeffs[: N + 1])

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries((self.coeffs[0] + other,) + self.coeffs[1:])
        N = min(self.order, other.order)
        return TruncatedSeries([self.coeffs[i] + other.coeffs[i] for i in range(N + 1)])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * other for c in self.coeffs])
        N = min(self.order, other.order)
        out = []
        for n in range(N + 1):
            acc = 0
            for i in range(n + 1):
                acc = acc + self.coeffs[i] * other.coeffs[n - i]
            out.append(acc)
        return TruncatedSeries(out)

    def __rmul__(self, other):
        return TruncatedSeries([other * c for c in self.coeffs])

    def reciprocal(self) -> "TruncatedSeries":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise SeriesError("constant term is not invertible")
        inv0 = 1 / c0 if not isinstance(c0, int) else Fraction(1, c0)
        out = [inv0]
        for n in range(1, self.order + 1):
            acc = 0
            for i in range(1, n + 1):
                acc = acc + self.coeffs[i] * out[n - i]
            out.append(-acc * inv0)
        return TruncatedSeries(out)

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.reciprocal()
        return TruncatedSeries([c / other for c in self.coeffs])

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """``self(inner(x))`` for ``inner`` without constant term (Horner)."""
        if inner.coeffs[0] != 0:
            raise SeriesError("inner series must have zero constant term")
        N = min(self.order, inner.order)
        inner = inner.truncate(N)
        out = TruncatedSeries([self.coeffs[N]] + [0] * N)
        for c in reversed(self.coeffs[:N]):
            out = out * inner + c
        return out

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        N = min(self.order, other.order)
        return all(self.coeffs[i] == other.coeffs[i] for i in range(N + 1))

    def __repr__(self):
        return f"TruncatedSeries({list(self.coeffs)!r})"


def exp_series(N: int, scale=1) -> TruncatedSeries:
    """``exp(scale * x)``."""
    scale = Fraction(scale)
    return TruncatedSeries([scale**n / math.factorial(n) for n in range(N + 1)])


def todd_series(N: int) -> TruncatedSeries:
    """``x / (1 - e^{-x}) = sum (-1)^n B_n x^n / n!``."""
    if N < 0:
        raise SeriesError("N must be >= 0")
    return TruncatedSeries([(-1) ** n * bernoulli(n) / math.factorial(n) for n in range(N + 1)])


def todd_inverse_series(N: int) -> TruncatedSeries:
    """``(1 - e^{-x}) / x``."""
    return todd_series(N).reciprocal()


def partial_geometric_series(d: int, N: int) -> TruncatedSeries:
    """``(1 - e^{-dx}) / x = sum (-1)^m d^{m+1} x^m / (m+1)!``."""
    if d < 1:
        raise SeriesError("d must be >= 1")
    return TruncatedSeries([Fraction((-1) ** m * d ** (m + 1), math.factorial(m + 1)) for m in range(N + 1)])


def chern_character_series(N: int) -> TruncatedSeries:
    return exp_series(N)


def equivariant_todd_line(theta_index: int, d: int, N: int) -> TruncatedSeries:
    """Todd class of a line on which g acts by ``zeta^theta``.

    ``1 / (1 - zeta^{-theta} e^{-x})`` over Q(zeta_d); the ordinary Todd
    series when theta = 0.
    """
    if not 0 <= theta_index < d:
        raise SeriesError("theta_index must lie in [0, d)")
    if theta_index == 0:
        return todd_series(N)
    mu = Cyclotomic.zeta_power(d, -theta_index)
    # 1 - mu * e^{-x}
    coeffs = [1 - mu] + [-mu * Fraction((-1) ** n, math.factorial(n)) for n in range(1, N + 1)]
    return TruncatedSeries(coeffs).reciprocal()


@dataclass(frozen=True)
class GenusSpec:
    kind: str  # "multiplicative" | "additive"
    series: TruncatedSeries

    def __post_init__(self):
        if self.kind not in ("multiplicative", "additive"):
            raise SeriesError(f"unknown genus kind {self.kind!r}")

    def of_lines(self, lines: Sequence[GradedClass], ring: RingPresentation = None) -> GradedClass:
        """Whitney formula: product (multiplicative) or sum (additive)."""
        if not lines:
            if ring is None:
                raise SeriesError("empty line list needs an explicit ring")
            return ring.one() if self.kind == "multiplicative" else ring.zero()
        vals = [apply_genus_line(self, c) for c in lines]
        out = vals[0]
        for v in vals[1:]:
            out = out * v if self.kind == "multiplicative" else out + v
        return out


def apply_genus_line(g, c1: GradedClass) -> GradedClass:
    """Substitute the nilpotent class ``c1`` into the genus series."""
    series = g.series if isinstance(g, GenusSpec) else g
    ring = c1.ring
    if not c1.is_zero() and not c1.is_pure_degree(1):
        raise SeriesError("c1 must have pure degree 1")
    if series.order < ring.top_degree:
        raise SeriesError(
            f"series order {series.order} below ring top degree {ring.top_degree}; result would be truncated"
        )
    out = ring.zero()
    power = ring.one()
    for n in range(ring.top_degree + 1):
        c = series[n]
        if c != 0:
            out = out + power * c
        power = power * c1
    return out


def todd_genus(N: int) -> GenusSpec:
    return GenusSpec("multiplicative", todd_series(N))


def ch_genus(N: int) -> GenusSpec:
    return GenusSpec("additive", chern_character_series(N))


def todd_of_sum(lines: Sequence[GradedClass], ring: RingPresentation = None) -> GradedClass:
    """Todd class of a direct sum of line bundles."""
    if ring is None:
        if not lines:
            raise SeriesError("empty line list needs an explicit ring")
        ring = lines[0].ring
    return todd_genus(ring.top_degree).of_lines(list(lines), ring)


def ch_line(c1: GradedClass) -> GradedClass:
    return apply_genus_line(chern_character_series(c1.ring.top_degree), c1)


def ch_of_sum(lines: Sequence[GradedClass], ring: RingPresentation = None) -> GradedClass:
    if ring is None:
        ring = lines[0].ring
    out = ring.zero()
    for c in lines:
        out = out + ch_line(c)
    return out


def power_sum(lines: Sequence[GradedClass], n: int, ring: RingPresentation) -> GradedClass:
    """``sum_l c_l^n``: the degree-n building block of any additive genus."""
    out = ring.zero()
    for c in lines:
        out = out + c**n
    return out


def series_to_list(s: TruncatedSeries) -> List:
    return list(s.coeffs)

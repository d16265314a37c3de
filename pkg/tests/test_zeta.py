from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from branchcov.zeta import (
    bernoulli,
    harmonic,
    r_coefficient,
    r_coefficient_table,
    r_genus_series,
    zeta_negative,
    zeta_prime_direct,
    zeta_prime_negative,
)


def test_bernoulli_examples():
    assert bernoulli(0) == 1
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(3) == 0
    assert bernoulli(4) == Fraction(-1, 30)


@given(st.integers(0, 40))
def test_bernoulli_recurrence(n):
    # sum_{j<=n} C(n+1, j) B_j = 0 for n >= 1
    if n == 0:
        return
    from math import comb

    assert sum(comb(n + 1, j) * bernoulli(j) for j in range(n + 1)) == 0


@given(st.integers(1, 30))
def test_odd_bernoulli_vanish(n):
    assert bernoulli(2 * n + 1) == 0


def test_zeta_negative_examples():
    assert zeta_negative(1) == Fraction(-1, 12)
    assert zeta_negative(3) == Fraction(1, 120)
    assert zeta_negative(2) == 0


@pytest.mark.parametrize("n", [1, 3, 5, 7])
def test_zeta_prime_dual_route(n):
    a, b = zeta_prime_negative(n), zeta_prime_direct(n)
    assert abs(a.value - b.value) <= 1e-10 * abs(a.value)
    assert a.bound <= 1e-12 * abs(a.value)
    # third, external check
    with mpmath.workdps(40):
        assert abs(a.value - mpmath.zeta(-n, derivative=1)) <= 1e-30


def test_zeta_prime_minus_one():
    v = zeta_prime_negative(1).value
    assert v < 0
    assert zeta_prime_direct(1).value < 0
    with mpmath.workdps(40):
        assert abs(v - (mpmath.mpf(1) / 12 - mpmath.log(mpmath.glaisher))) < 1e-30


def test_zeta_prime_rejects_even():
    with pytest.raises(ValueError):
        zeta_prime_negative(2)


def test_r_coefficient_examples():
    with mpmath.workdps(40):
        _r_coefficient_examples()


def _r_coefficient_examples():
    zp1 = zeta_prime_negative(1).value
    assert abs(r_coefficient(1).value - (2 * zp1 - mpmath.mpf(1) / 12)) < 1e-30
    assert r_coefficient(2).value == 0
    zp3 = zeta_prime_negative(3).value
    want = (2 * zp3 / (mpmath.mpf(1) / 120) + mpmath.mpf(11) / 6) * (mpmath.mpf(1) / 120) / 6
    assert abs(r_coefficient(3).value - want) < 1e-30
    assert harmonic(3) == Fraction(11, 6)


def test_r_coefficient_frozen_values():
    # regression values of the dual-route oracle above
    frozen = {1: -0.4141756207342352, 3: 0.004339155082221063, 5: -8.505682101036526e-05}
    for n, v in frozen.items():
        assert float(r_coefficient(n).value) == pytest.approx(v, rel=1e-15)
        assert r_coefficient(n).bound < 1e-10


def test_r_genus_series_is_odd():
    s = r_genus_series(10)
    assert all(s[n] == 0 for n in range(0, 11, 2))
    assert s[1] == r_coefficient(1).value
    assert r_coefficient_table(7).coefficient(4).value == 0

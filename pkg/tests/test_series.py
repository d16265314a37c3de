from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from branchcov.cyclotomic import Cyclotomic
from branchcov.ring import make_projective_space
from branchcov.series import (
    SeriesError,
    TruncatedSeries,
    apply_genus_line,
    ch_genus,
    ch_of_sum,
    exp_series,
    equivariant_todd_line,
    partial_geometric_series,
    todd_genus,
    todd_inverse_series,
    todd_of_sum,
    todd_series,
)

x = sympy.Symbol("x")


def sympy_coeffs(expr, N):
    s = sympy.series(expr, x, 0, N + 1).removeO()
    return [Fraction(str(s.coeff(x, n))) for n in range(N + 1)]


def test_todd_examples():
    assert list(todd_series(2).coeffs) == [1, Fraction(1, 2), Fraction(1, 12)]
    assert todd_series(3)[3] == 0
    assert list(todd_series(0).coeffs) == [1]


@pytest.mark.parametrize("N", [2, 6, 10])
def test_todd_against_symbolic(N):
    assert list(todd_series(N).coeffs) == sympy_coeffs(x / (1 - sympy.exp(-x)), N)
    assert list(todd_inverse_series(N).coeffs) == sympy_coeffs((1 - sympy.exp(-x)) / x, N)


def test_todd_inverse():
    # reciprocal of 1 + x/2 + x^2/12 through order 2
    assert list(todd_inverse_series(2).coeffs) == [1, Fraction(-1, 2), Fraction(1, 6)]
    assert list((todd_series(5) * todd_inverse_series(5)).coeffs) == [1, 0, 0, 0, 0, 0]
    assert list(todd_inverse_series(0).coeffs) == [1]


def test_partial_geometric_examples():
    assert list(partial_geometric_series(1, 1).coeffs) == [1, Fraction(-1, 2)]
    for d in range(1, 6):
        assert partial_geometric_series(d, 3)[0] == d


@given(d=st.integers(1, 7), N=st.integers(0, 8))
def test_partial_geometric_identity(d, N):
    geometric = TruncatedSeries([0] * (N + 1))
    for j in range(d):
        geometric = geometric + exp_series(N, -j)
    assert list((geometric * todd_inverse_series(N)).coeffs) == list(partial_geometric_series(d, N).coeffs)


def test_equivariant_todd_examples():
    assert list(equivariant_todd_line(0, 3, 4).coeffs) == list(todd_series(4).coeffs)
    for d in (2, 4, 6):
        assert equivariant_todd_line(d // 2, d, 0)[0] == Cyclotomic.rational(d, Fraction(1, 2))
    val = equivariant_todd_line(1, 4, 0)[0]
    assert abs(val.to_complex() - 1 / (1 - 1j ** -1)) < 1e-15
    with pytest.raises(SeriesError):
        equivariant_todd_line(4, 4, 2)


def test_apply_genus_examples():
    P = make_projective_space(1)
    a = P.gen("a")
    assert apply_genus_line(todd_genus(1), a) == P.one() + a * Fraction(1, 2)
    for k in (1, 2, 3):
        assert apply_genus_line(ch_genus(1), a * (-k)) == P.one() - a * k
    assert apply_genus_line(todd_genus(3), P.zero()) == P.one()
    assert apply_genus_line(ch_genus(3), P.zero()) == P.one()


def test_truncated_series_is_rejected():
    P = make_projective_space(3)
    with pytest.raises(SeriesError):
        apply_genus_line(todd_genus(2), P.gen("a"))


def test_todd_of_sum_examples():
    P = make_projective_space(1)
    a = P.gen("a")
    # tangent lines (a, a) of CP^1 and L = O(1)
    assert todd_of_sum([a, a, a]) == P.one() + a * Fraction(3, 2)
    assert todd_of_sum([], P) == P.one()
    assert todd_of_sum([P.zero()]) == P.one()


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4), st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_ch_additive_todd_multiplicative(xs, ys):
    P = make_projective_space(2)
    a = P.gen("a")
    A, B = [a * v for v in xs], [a * v for v in ys]
    assert ch_of_sum(A + B) == ch_of_sum(A) + ch_of_sum(B)
    assert todd_of_sum(A + B) == todd_of_sum(A) * todd_of_sum(B)


@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=9), min_size=1, max_size=6))
def test_reciprocal_contract(c):
    c = [Fraction(1)] + c
    s = TruncatedSeries(c)
    prod = s * s.reciprocal()
    assert list(prod.coeffs) == [1] + [0] * (len(c) - 1)

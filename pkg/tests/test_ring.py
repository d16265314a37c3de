import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from branchcov.ring import (
    RingError,
    integrate,
    make_curve,
    make_projective_space,
    make_total_space,
    monomials_up_to,
    mul,
    pushforward_fiber,
    restrict_integrate,
)


def hirzebruch(k):
    P = make_projective_space(1)
    a = P.gen("a")
    V = make_total_space(P, a * k)
    return P, V, V.pullback(a), V.gen("h")


def test_projective_space_bases():
    P1 = make_projective_space(1)
    assert P1.basis == [(0,), (1,)]
    assert integrate(P1.gen("a")) == 1
    P0 = make_projective_space(0)
    assert P0.basis == [()]
    assert integrate(P0.one()) == 1
    P2 = make_projective_space(2)
    a = P2.gen("a")
    assert (a**3).is_zero()
    assert integrate(a * a) == 1


def test_negative_dimension_rejected():
    with pytest.raises(RingError):
        make_projective_space(-1)
    with pytest.raises(RingError):
        make_curve(-2)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_total_space_relation(k):
    _, V, a, h = hirzebruch(k)
    assert len(V.basis) == 4
    assert integrate(a * h) == 1
    assert h * h == a * h * (-k)


def test_total_space_over_point():
    P0 = make_projective_space(0)
    V = make_total_space(P0, P0.zero())
    h = V.gen("h")
    assert (h * h).is_zero()
    assert integrate(h) == 1


def test_mul_examples():
    P = make_projective_space(1)
    a = P.gen("a")
    assert mul(P.one() + a, P.one() + a) == P.one() + a * 2
    _, V, A, h = hirzebruch(1)
    assert mul(h, h) == -(A * h)
    assert mul(A + h, V.one()) == A + h


def test_integrate_examples():
    P = make_projective_space(1)
    a = P.gen("a")
    assert integrate(P.scalar(3) + a * 5) == 5
    assert integrate(P.one()) == 0


def test_pushforward_examples():
    P, V, A, h = hirzebruch(2)
    assert pushforward_fiber(h) == P.one()
    assert pushforward_fiber(V.one()).is_zero()
    assert pushforward_fiber(h * h) == P.gen("a") * (-2)


def test_restrict_integrate_examples():
    _, V, a, h = hirzebruch(1)
    W = (a + h) * 2
    assert restrict_integrate(V.one(), W) == 0
    assert restrict_integrate(a + h, a + h) == 1
    assert restrict_integrate(V.zero(), W) == 0


def test_curve_ring():
    C = make_curve(3)
    p = C.gen("p")
    assert (p * p).is_zero()
    assert integrate(p * 7 + C.one()) == 7


small = st.integers(-4, 4)


@given(k=st.integers(0, 4), coeffs=st.lists(small, min_size=8, max_size=8))
def test_projection_formula(k, coeffs):
    P, V, A, h = hirzebruch(k)
    x = P.scalar(coeffs[0]) + P.gen("a") * coeffs[1]
    y = V.scalar(coeffs[2]) + A * coeffs[3] + h * coeffs[4] + A * h * coeffs[5]
    assert integrate(V.pullback(x) * y) == integrate(x * pushforward_fiber(y))


@given(k=st.integers(-3, 3))
def test_rewriting_confluent(k):
    _, V, _, _ = hirzebruch(k)
    orders = list(itertools.permutations(range(V.ngens)))
    for m in monomials_up_to(V, V.top_degree + 2):
        forms = {tuple(sorted(V.reduce_monomial(m, list(o)).items())) for o in orders}
        assert len(forms) == 1


@given(st.lists(small, min_size=12, max_size=12))
def test_ring_axioms(c):
    _, V, A, h = hirzebruch(1)

    def cls(i):
        return V.scalar(c[i]) + A * c[i + 1] + h * c[i + 2] + A * h * c[i + 3]

    x, y, z = cls(0), cls(4), cls(8)
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


def test_classes_are_exact():
    _, V, A, h = hirzebruch(1)
    v = integrate((A + h) * Fraction(1, 3))
    assert v == 0
    assert isinstance(integrate(A * h * Fraction(2, 3)), Fraction)

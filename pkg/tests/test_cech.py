from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from branchcov import linalg
from branchcov.cech import (
    LineSum,
    SheafMap,
    delta1_matrix,
    expected_delta_entries,
    h0_basis,
    h1_basis,
    serre_pairing_matrix,
    verify_deltaprime_identity,
    verify_section_identities,
)
from branchcov.covering import CoveringError, covering_on_curve, covering_on_p1, cyclic_on_p1


def test_bases():
    assert h0_basis(2).exponents == (0, 1, 2)
    assert len(h1_basis(-1)) == 0
    assert h1_basis(-3).exponents == (-1, -2)
    assert len(h0_basis(-1)) == 0


@given(st.integers(-10, 10))
def test_basis_dimensions(m):
    assert len(h0_basis(m)) == max(m + 1, 0)
    assert len(h1_basis(-m)) == (m - 1 if m >= 2 else 0)


@pytest.mark.parametrize("k", range(0, 7))
def test_serre_pairing_identity(k):
    assert serre_pairing_matrix(k) == linalg.identity(k + 1)


def test_serre_pairing_negative():
    assert serre_pairing_matrix(-1) == []


def test_delta_examples():
    alpha1 = (Fraction(1), Fraction(2))
    spec = covering_on_p1(1, 3, [alpha1, (), (Fraction(-1), 0, 0, Fraction(1))])
    got = delta1_matrix(spec)
    assert got.entries == ((( Fraction(1),), alpha1), ((), (Fraction(1),)))
    assert delta1_matrix(cyclic_on_p1(1, 2, (-1, 0, 1))).entries == (((Fraction(1),),),)
    cyc = delta1_matrix(cyclic_on_p1(1, 4, (-1,) + (0,) * 3 + (1,)))
    assert cyc.entries == tuple(tuple((Fraction(1),) if i == j else () for j in range(3)) for i in range(3))


def random_alpha(d, k):
    return st.tuples(*[st.lists(st.integers(-3, 3).map(Fraction), min_size=i * k + 1, max_size=i * k + 1) for i in range(1, d + 1)])


@settings(max_examples=20)
@given(st.sampled_from([3, 4]).flatmap(lambda d: st.tuples(st.just(d), random_alpha(d, 1))))
def test_delta_unitriangular(case):
    d, alpha = case
    alpha = list(alpha)
    alpha[-1] = alpha[-1][:-1] + [Fraction(1)]
    spec = covering_on_p1(1, d, alpha)
    got = delta1_matrix(spec)
    assert got == expected_delta_entries(spec)
    for z in range(-5, 6):
        assert linalg.det(got.evaluate(Fraction(z, 2))) == 1


def test_deltaprime_identity():
    for d in (2, 3, 4):
        assert verify_deltaprime_identity(covering_on_p1(1, d, [()] * (d - 1) + [(1,)]))
    src = LineSum((-1, -2))
    bad = SheafMap(src, src, {(0, 0): (Fraction(1),), (1, 1): (Fraction(2),)})
    assert not verify_deltaprime_identity(covering_on_p1(1, 3, [(), (), (1,)]), perturb=bad)


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("k", [1, 2])
def test_section_identities_grid(d, k):
    spec = cyclic_on_p1(k, d, (-1,) + (0,) * (d * k - 1) + (1,))
    rep = verify_section_identities(spec)
    assert rep.ok, rep.checks
    assert rep.values["nu_3"] == 1
    assert rep.values["sigma"] == rep.values["tau_d"] / rep.values["sigma_1"]
    assert rep.values["rho_d"] == rep.values["prod_phi"]
    assert rep.values["tau_d"] == rep.values["rho_d"]


def test_section_identities_general_alpha():
    spec = covering_on_p1(1, 3, [(Fraction(1), Fraction(-1)), (Fraction(2),), (Fraction(-1), 0, 0, Fraction(1))])
    for xi in (0, 1):
        assert verify_section_identities(spec, xi).ok


def test_section_identities_need_p1():
    with pytest.raises(CoveringError):
        verify_section_identities(covering_on_curve(1, 1, 2))

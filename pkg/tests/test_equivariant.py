from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from branchcov import terms
from branchcov.covering import covering_on_cpn, covering_on_curve, covering_on_p1, euler_char_W
from branchcov.cyclotomic import Cyclotomic, cyclotomic_polynomial, euler_phi
from branchcov.equivariant import (
    EquivariantError,
    TrivialAngleProvider,
    ZeroRProvider,
    atiyah_bott_fixed_point,
    ch_g_direct_image,
    character_R_term,
    character_on_Lj,
    check_provider_contract,
    equivariant_euler_direct,
    fixed_locus,
    fixed_point_R_term,
    invariant_part,
    lefschetz_table,
    telescoping_on_infinity_section,
    theorem32_R_terms,
    theorem32_R_terms_curve_dual,
    theorem41_topological_terms,
)
from branchcov.zeta import r_coefficient


def one(d):
    return Cyclotomic.rational(d, 1)


def test_cyclotomic_field():
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert euler_phi(12) == 4
    z = Cyclotomic.zeta_power(5, 1)
    assert z**5 == one(5)
    assert sum((Cyclotomic.zeta_power(5, j) for j in range(5)), Cyclotomic(5, [0])) == Cyclotomic(5, [0])
    assert (1 - z) * (1 - z).inverse() == one(5)
    assert abs(Cyclotomic.zeta_power(4, 1).to_complex() - 1j) < 1e-15


@given(st.integers(2, 9), st.integers(-20, 20), st.integers(-20, 20))
def test_zeta_powers_multiply(d, a, b):
    assert Cyclotomic.zeta_power(d, a) * Cyclotomic.zeta_power(d, b) == Cyclotomic.zeta_power(d, a + b)


def test_character_examples():
    for d in (2, 3, 5):
        assert all(character_on_Lj(0, j, d) == one(d) for j in range(d))
        assert all(character_on_Lj(g, 0, d) == one(d) for g in range(d))
    assert character_on_Lj(1, 1, 2) == Cyclotomic.rational(2, -1)
    with pytest.raises(EquivariantError):
        character_on_Lj(3, 1, 3)


@pytest.mark.parametrize("k,value", [(1, 1), (2, 2)])
def test_lefschetz_worked_values(k, value):
    spec = covering_on_p1(k, 2)
    assert equivariant_euler_direct(1, spec) == Cyclotomic.rational(2, value)
    assert atiyah_bott_fixed_point(1, spec) == Cyclotomic.rational(2, value)


def test_identity_element_gives_euler_characteristic():
    for k, d in [(1, 2), (2, 3), (1, 4)]:
        spec = covering_on_p1(k, d)
        assert equivariant_euler_direct(0, spec) == Cyclotomic.rational(d, euler_char_W(spec))
    with pytest.raises(EquivariantError):
        atiyah_bott_fixed_point(0, covering_on_p1(1, 2))


@pytest.mark.parametrize("d", [2, 3, 4, 5])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_lefschetz_routes_agree(d, k):
    for g, direct, fp in lefschetz_table(covering_on_p1(k, d)):
        if g:
            assert direct == fp
    for g, direct, fp in lefschetz_table(covering_on_curve(2, k, d, xi=(0, 1))):
        if g:
            assert direct == fp


def test_d3_worked_value():
    spec = covering_on_p1(1, 3)
    z = Cyclotomic.zeta_power(3, 1)
    assert equivariant_euler_direct(1, spec) == 1 - z
    assert atiyah_bott_fixed_point(2, spec) == equivariant_euler_direct(2, spec)


def test_fixed_locus():
    fl = fixed_locus(1, covering_on_p1(2, 3))
    assert fl.sigma_degree == 6
    assert [c.name for c in fl.in_V] == ["S", "P(L)"]
    assert fixed_locus(1, covering_on_cpn(2, 1, 2)).sigma_degree is None
    with pytest.raises(EquivariantError):
        fixed_locus(0, covering_on_p1(1, 2))
    with pytest.raises(EquivariantError):
        equivariant_euler_direct(1, covering_on_p1(1, 3, [(1,), (), (1,)]))


@pytest.mark.parametrize("spec", [covering_on_p1(1, 3), covering_on_cpn(2, 1, 4), covering_on_curve(1, 2, 3)])
def test_character_orthogonality(spec):
    d = spec.degree
    deg0 = [ch_g_direct_image(g, spec).constant() for g in range(d)]
    assert all(c == 0 for c in deg0[1:])
    assert sum(deg0[1:], deg0[0]) / d == one(d)


def test_ch_g_at_identity_is_direct_image():
    from branchcov.covering import direct_image
    from branchcov.series import ch_of_sum

    spec = covering_on_p1(2, 3)
    plain = ch_of_sum(direct_image(spec).classes())
    assert ch_g_direct_image(0, spec) == plain.map_coeffs(lambda c: Cyclotomic.rational(3, c))


def test_invariant_part_is_chi_S():
    spec = covering_on_p1(1, 4)
    assert invariant_part(spec) == one(4)


@pytest.mark.parametrize("spec", [covering_on_p1(1, 2), covering_on_cpn(2, 2, 3), covering_on_curve(3, 1, 4)])
def test_infinity_section_cancels(spec):
    assert all(telescoping_on_infinity_section(spec).values())


def test_r_terms_dual_route():
    res = theorem32_R_terms(covering_on_p1(1, 2))
    base, cover = theorem32_R_terms_curve_dual(covering_on_p1(1, 2))
    assert abs(res.base_term.value - base) < 1e-10
    assert abs(res.cover_term.value - cover) < 1e-10
    assert float(base) == pytest.approx(-1.6567024829369408, rel=1e-14)
    assert float(cover) == pytest.approx(-0.8283512414684704, rel=1e-14)
    assert res.base_term.bound < 1e-10


@pytest.mark.parametrize("genus,k,d", [(0, 2, 3), (2, 1, 2), (1, 3, 4)])
def test_r_terms_dual_route_curves(genus, k, d):
    spec = covering_on_curve(genus, k, d)
    res = theorem32_R_terms(spec)
    base, cover = theorem32_R_terms_curve_dual(spec)
    assert abs(res.base_term.value - base) < 1e-10
    assert abs(res.cover_term.value - cover) < 1e-10


def test_r_terms_double_with_twist():
    one_ = theorem32_R_terms(covering_on_p1(1, 3))
    two = theorem32_R_terms(covering_on_p1(1, 3, xi=(0, 0)))
    assert abs(two.base_term.value - 2 * one_.base_term.value) < 1e-12
    assert abs(two.cover_term.value - 2 * one_.cover_term.value) < 1e-12


def test_r_terms_weights_exact_on_surfaces():
    res = theorem32_R_terms(covering_on_cpn(2, 1, 2))
    assert all(isinstance(w, Fraction) for _, w in res.base_weights + res.cover_weights)


def test_character_term_at_identity_is_base_term():
    for spec in (covering_on_p1(1, 2), covering_on_curve(2, 2, 3)):
        assert abs(character_R_term(0, spec).value - theorem32_R_terms(spec).base_term.value) < 1e-12


def test_character_term_vanishes_on_curves():
    # only degree-0 characters pair with r_1 on a curve, and they sum to zero
    t = character_R_term(1, covering_on_p1(1, 2))
    assert t.status == terms.EXACT and t.value == 0


def test_fixed_point_term_providers():
    spec = covering_on_p1(1, 2)
    assert fixed_point_R_term(1, spec).status == terms.PENDING
    assert fixed_point_R_term(1, spec, TrivialAngleProvider()).status == terms.PENDING
    z = fixed_point_R_term(1, spec, ZeroRProvider())
    assert z.status == terms.PENDING and z.value is None
    assert z.details["placeholder_value"] == 0


def test_provider_contract():
    assert check_provider_contract(TrivialAngleProvider())
    assert not check_provider_contract(ZeroRProvider())
    assert TrivialAngleProvider().coefficients(Fraction(0), 3)[1].value == r_coefficient(1).value


def test_topological_terms_reject_identity():
    with pytest.raises(EquivariantError):
        theorem41_topological_terms(0, covering_on_p1(1, 2))
    names = [t.name for t in theorem41_topological_terms(1, covering_on_p1(1, 2))]
    assert names == ["R_character", "R_fixed_point"]

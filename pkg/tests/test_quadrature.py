import math

import pytest
from hypothesis import given, settings, strategies as st

from branchcov.covering import covering_on_curve, cyclic_on_p1
from branchcov.cyclotomic import Cyclotomic
from branchcov.equivariant import EquivariantError
from branchcov.quadrature import (
    FSSection,
    QuadratureError,
    analytic_log_norm_integral,
    differential_norms,
    fs_log_norm_integral,
    lemma34_consistency_probe,
    log_term_prefactor,
    monotone_tail,
    normal_metric_term,
    section_of_branch_locus,
    successive_agreement,
    theorem41_log_term,
)


def default_spec():
    return cyclic_on_p1(1, 2, (-1, 0, 1))


@pytest.mark.parametrize("m", range(0, 9))
def test_monomial_oracle(m):
    r = fs_log_norm_integral(FSSection.monomial(m))
    assert abs(r.value + m) <= 1e-6
    assert analytic_log_norm_integral(FSSection.monomial(m)) == -m
    assert successive_agreement(r)
    # the constant section is integrated exactly on the first level
    assert monotone_tail(r) or r.error_estimate == 0


def test_constant_section():
    r = fs_log_norm_integral(FSSection(0, (1,)))
    assert abs(r.value) < 1e-12


def test_rotation_invariance():
    s = FSSection(3, (1, -2, 0.5j, 1))
    a = fs_log_norm_integral(s)
    b = fs_log_norm_integral(s.rotated(0.7))
    assert abs(a.value - b.value) <= a.error_estimate + b.error_estimate + 1e-12


def test_product_additivity():
    s, t = FSSection(2, (-1, 0, 1)), FSSection(3, (2, 1j, 0, 1))
    rs, rt, rst = (fs_log_norm_integral(x) for x in (s, t, s.times(t)))
    assert abs(rst.value - rs.value - rt.value) <= rs.error_estimate + rt.error_estimate + rst.error_estimate


def test_metric_scale_shift():
    s = FSSection(2, (-1, 0, 1))
    a, b = fs_log_norm_integral(s), fs_log_norm_integral(FSSection(2, s.coeffs, 3.0))
    assert abs((b.value - a.value) - math.log(3.0)) <= a.error_estimate + b.error_estimate + 1e-12


root = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)


@settings(max_examples=8)
@given(st.lists(root, min_size=1, max_size=3), st.integers(0, 1))
def test_random_sections_against_oracle(roots, extra):
    coeffs = [1 + 0j]
    for a in roots:
        coeffs = [0j] + coeffs
        for i in range(len(coeffs) - 1):
            coeffs[i] -= a * coeffs[i + 1]
    s = FSSection(len(roots) + extra, tuple(coeffs))
    r = fs_log_norm_integral(s)
    assert abs(r.value - analytic_log_norm_integral(s)) <= max(r.error_estimate, 1e-6)


def test_cell_budget_exhaustion():
    with pytest.raises(QuadratureError) as info:
        fs_log_norm_integral(FSSection.monomial(4), tol=1e-14, max_cells=100)
    assert info.value.partial is not None


def test_prefactor_default():
    p0, p2 = log_term_prefactor(1, default_spec())
    assert p0 == Cyclotomic.rational(2, "1/2")
    assert p2 == Cyclotomic.rational(2, "1/4")


@pytest.mark.parametrize("k,d", [(1, 2), (1, 3), (2, 2)])
def test_log_term_monomial_branch_locus(k, d):
    spec = cyclic_on_p1(k, d, (0,) * (d * k) + (1,))
    t = theorem41_log_term(1, spec)
    _, p2 = log_term_prefactor(1, spec)
    want = -d * k * p2.to_complex()
    assert abs(complex(t.value) - want) <= 1e-6 * max(1, abs(want))
    assert t.details["levels"] >= 3


def test_log_term_preconditions():
    with pytest.raises(EquivariantError):
        theorem41_log_term(0, default_spec())
    with pytest.raises(EquivariantError):
        theorem41_log_term(1, covering_on_curve(1, 1, 2))


def test_normal_metric_default():
    # alpha = z^2 - 1: |alpha'(+-1)|^2 = 4 at both points, local factor 1/2
    assert differential_norms(section_of_branch_locus(default_spec())) == pytest.approx([4.0, 4.0])
    t = normal_metric_term(1, default_spec())
    assert abs(complex(t.value) - math.log(2)) < 1e-14
    assert t.details["constant_fit_discrepancy"] == pytest.approx(0.0, abs=1e-15)


def test_normal_metric_root_at_infinity():
    # alpha_2 = z: zeros at 0 and infinity, both with unit differential norm
    spec = cyclic_on_p1(1, 2, (0, 1))
    assert differential_norms(section_of_branch_locus(spec)) == pytest.approx([1.0, 1.0])


def test_rescaling_probe():
    probes = lemma34_consistency_probe(default_spec())
    assert len(probes) == 2 and all(p.ok for p in probes)
    (unit,) = lemma34_consistency_probe(default_spec(), scales=(1.0,))
    assert unit.residual == 0

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from branchcov import linalg
from branchcov.torsion import (
    BasedExactSequence,
    NotExactError,
    change_basis,
    concatenate,
    direct_sum,
    direct_sum_sign,
    splice_two_term,
    torsion_of_based_sequence,
)

entry = st.integers(-3, 3).map(Fraction)


def square(n):
    return st.lists(st.lists(entry, min_size=n, max_size=n), min_size=n, max_size=n)


def invertible(n):
    return square(n).filter(lambda m: linalg.det(m) != 0)


def test_identity_two_term():
    assert torsion_of_based_sequence(splice_two_term(3, linalg.identity(3))) == 1


def test_two_term_is_determinant():
    M = [[Fraction(2), Fraction(1)], [Fraction(0), Fraction(3)]]
    assert torsion_of_based_sequence(splice_two_term(2, M)) == 6


def test_non_exact_rejected():
    seq = BasedExactSequence((2, 2), ([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(0)]],))
    assert not seq.is_exact()
    with pytest.raises(NotExactError):
        torsion_of_based_sequence(seq)


def short_exact(M: list, n: int) -> BasedExactSequence:
    """0 -> A -> A + B -> B -> 0 built from an invertible n x n block M on A."""
    inc = [row[:] for row in M] + [[Fraction(0)] * n for _ in range(n)]
    proj = [[Fraction(0)] * n + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    return BasedExactSequence((n, 2 * n, n), (inc, proj))


@given(invertible(2))
def test_split_sequence(M):
    seq = short_exact(M, 2)
    # only the middle term carries a non-trivial change of basis
    assert torsion_of_based_sequence(seq) == linalg.det(M)
    ident = short_exact(linalg.identity(2), 2)
    assert torsion_of_based_sequence(ident) == 1


@given(invertible(2), invertible(3))
def test_basis_change_covariance(M, P):
    seq = short_exact(M, 2)
    pos = 1
    P4 = linalg.block_diag(P, (3, 3), [[Fraction(1)]], (1, 1))
    new = change_basis(seq, pos, P4)
    # middle term enters with exponent +1
    assert torsion_of_based_sequence(new) == torsion_of_based_sequence(seq) / linalg.det(P4)


@given(invertible(2), invertible(2))
def test_direct_sum_multiplicative(A, B):
    a, b = short_exact(A, 2), short_exact(B, 2)
    s = direct_sum(a, b)
    assert torsion_of_based_sequence(s) == direct_sum_sign(a, b) * torsion_of_based_sequence(a) * torsion_of_based_sequence(b)


@given(invertible(2), invertible(3))
def test_concatenation_multiplicative(A, B):
    a, b = splice_two_term(2, A), splice_two_term(3, B)
    joined = concatenate([a, b])
    # the second piece sits at odd positions again after a two-term prefix
    assert torsion_of_based_sequence(joined) == torsion_of_based_sequence(a) * torsion_of_based_sequence(b)

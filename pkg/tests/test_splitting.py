"""Splitting-field abelianness verdicts against classical known groups."""

from qpgdb.polynomials import IntPoly
from qpgdb.splitting import is_abelian_splitting_field


def P(*coeffs_low_first):
    return IntPoly(tuple(coeffs_low_first))


def test_linear_and_quadratic_always_abelian():
    assert is_abelian_splitting_field(P(-7, 1))
    assert is_abelian_splitting_field(P(-5, 0, 1))
    assert is_abelian_splitting_field(P(-1, 1, 1))
    assert is_abelian_splitting_field(P(3, -1, 1))


def test_cyclic_cubic():
    # x^3 - 3x - 1: discriminant 81, Galois group C3
    assert is_abelian_splitting_field(P(-1, -3, 0, 1))


def test_generic_cubic_s3():
    # x^3 - 2: group S3
    assert not is_abelian_splitting_field(P(-2, 0, 0, 1))


def test_cubic_nonsquare_disc():
    # x^3 + x + 1: disc -31, S3
    assert not is_abelian_splitting_field(P(1, 1, 0, 1))


def test_cyclotomic_quartics():
    # 5th, 8th and 12th cyclotomic polynomials: (Z/m)* is abelian
    assert is_abelian_splitting_field(P(1, 1, 1, 1, 1))
    assert is_abelian_splitting_field(P(1, 0, 0, 0, 1))
    assert is_abelian_splitting_field(P(1, 0, -1, 0, 1))


def test_cyclotomic_sextics():
    # 7th and 9th cyclotomic polynomials
    assert is_abelian_splitting_field(P(1, 1, 1, 1, 1, 1, 1))
    assert is_abelian_splitting_field(P(1, 0, 0, 1, 0, 0, 1))


def test_dihedral_quartics():
    # x^4 - 2 and x^4 + 2 both have group D4
    assert not is_abelian_splitting_field(P(-2, 0, 0, 0, 1))
    assert not is_abelian_splitting_field(P(2, 0, 0, 0, 1))


def test_a4_square_discriminant_quartic():
    # x^4 + 8x + 12 has group A4: square discriminant and uniform
    # factor degrees mod many primes, so the shortcuts stay silent and
    # the verdict must come from the root-field splitting itself
    assert not is_abelian_splitting_field(P(12, 8, 0, 0, 1))


def test_biquadratic_klein_four():
    # x^4 - 10x^2 + 1 = minpoly(sqrt2 + sqrt3), group C2 x C2
    assert is_abelian_splitting_field(P(1, 0, -10, 0, 1))


def test_cyclic_quartic():
    # x^4 + x^3 + x^2 + x + 1 is C4; also x^4 - 4x^2 + 2 (field Q(zeta16)+)
    assert is_abelian_splitting_field(P(2, 0, -4, 0, 1))


def test_generic_quartic_s4():
    # x^4 - x - 1: group S4
    assert not is_abelian_splitting_field(P(-1, -1, 0, 0, 1))


def test_generic_quintic():
    # x^5 - x - 1: group S5
    assert not is_abelian_splitting_field(P(-1, -1, 0, 0, 0, 1))

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpgdb.factorint import factor_over_integers
from qpgdb.polynomials import IntPoly

X = IntPoly.x()


def parts(f):
    return factor_over_integers(f).factors


def test_linear_times_quadratic():
    f = (X - 5) * (X + 1) * (X ** 2 - 5)
    fac = factor_over_integers(f)
    assert fac.unit == 1 and fac.content == 1
    assert fac.factors == ((X - 5, 1), (X + 1, 1), (X ** 2 - 5, 1), )


def test_seven_variant():
    f = (X - 7) * (X + 1) * (X ** 2 - 7)
    assert [p for p, _ in parts(f)] == [X - 7, X + 1, X ** 2 - 7]


def test_all_linear():
    f = (X - 8) * (X - 2) * (X + 1) * (X + 4)
    assert [p for p, _ in parts(f)] == [X - 8, X - 2, X + 1, X + 4]


def test_irreducible_stays_whole():
    for f in [X ** 2 - 5, X ** 2 + X - 1, X ** 3 - 2, X ** 4 + 1,
              X ** 4 + 8 * X + 12, X ** 6 + X ** 3 + 1]:
        fac = parts(f)
        assert fac == ((f, 1),)


def test_multiplicities():
    f = (X - 1) ** 3 * (X ** 2 + X + 1) ** 2 * 6
    fac = factor_over_integers(f)
    assert fac.unit == 1 and fac.content == 6
    assert fac.factors == ((X - 1, 3), (X ** 2 + X + 1, 2))
    assert fac.expand() == f


def test_negative_lead_and_content():
    f = -4 * (X - 3) * (X + 2)
    fac = factor_over_integers(f)
    assert fac.unit == -1 and fac.content == 4
    assert fac.expand() == f


def test_nonmonic():
    f = (2 * X + 1) * (3 * X - 5) * (X ** 2 + 2)
    fac = factor_over_integers(f)
    assert set(p for p, _ in fac.factors) == {2 * X + 1, 3 * X - 5, X ** 2 + 2}
    assert fac.expand() == f


def test_cyclotomic_like_products():
    # x^12 - 1 = prod of cyclotomics of the divisors of 12
    f = X ** 12 - 1
    expected = {
        X - 1,
        X + 1,
        X ** 2 + X + 1,
        X ** 2 + 1,
        X ** 2 - X + 1,
        X ** 4 - X ** 2 + 1,
    }
    assert set(p for p, _ in parts(f)) == expected


def test_brute_force_agreement_small_degree():
    # [oracle] every monic quartic factors into irreducibles whose product
    # is the input and which have no rational roots unless linear
    f = (X ** 2 - 2) * (X ** 2 - 3)
    fac = factor_over_integers(f)
    assert fac.expand() == f
    for p, _ in fac.factors:
        assert p.degree == 2
        # no rational roots: candidates are divisors of the constant term
        c0 = p.coeffs[0]
        for r in range(-abs(c0), abs(c0) + 1):
            if r and c0 % r == 0:
                assert p(r) != 0
            if r == 0 and c0 == 0:
                assert p(0) != 0


@settings(deadline=None, max_examples=60)
@given(
    st.lists(
        st.lists(st.integers(-5, 5), min_size=2, max_size=4).filter(
            lambda cs: any(cs[1:])
        ),
        min_size=1,
        max_size=3,
    )
)
def test_expand_roundtrip(factor_coeffs):
    f = IntPoly((1,))
    for cs in factor_coeffs:
        f = f * IntPoly(tuple(cs))
    if f.degree < 1:
        return
    fac = factor_over_integers(f)
    assert fac.expand() == f
    for p, _ in fac.factors:
        assert p.lc > 0
        assert p.content() == 1


def test_larger_degree_smoke():
    # norm-sized input: degree 12 with repeated structure
    f = (X ** 4 + 1) * (X ** 4 - 2) * (X ** 2 - 3) * (X - 1) * (X + 7)
    fac = factor_over_integers(f)
    assert fac.expand() == f
    assert len(fac.factors) == 5

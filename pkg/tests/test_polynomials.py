from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpgdb.polynomials import (
    IntPoly,
    cauchy_root_bound,
    discriminant,
    isolate_real_roots,
    newton_power_sums,
    poly_gcd,
    resultant,
    squarefree_part,
    sturm_chain,
    yun_decomposition,
)

X = IntPoly.x()


def test_basic_arithmetic():
    p = (X - 2) * (X + 2)
    assert p == X ** 2 - 4
    assert p(5) == 21
    assert p(Fraction(1, 2)) == Fraction(-15, 4)
    assert (X ** 3).derivative() == 3 * X ** 2
    assert IntPoly((0, 0, 0)) == IntPoly()
    assert IntPoly().degree == -1


def test_shift():
    p = X ** 2 + 1
    assert p.shift(3) == X ** 2 + 6 * X + 10


def test_monic_divmod_and_exact_div():
    f = (X ** 2 + 3 * X + 1) * (X - 4) + IntPoly((7,))
    q, r = f.monic_divmod(X - 4)
    assert q == X ** 2 + 3 * X + 1
    assert r == IntPoly((7,))
    g = (2 * X + 1) * (3 * X ** 2 - X + 5)
    assert g.try_exact_div(2 * X + 1) == 3 * X ** 2 - X + 5
    assert g.try_exact_div(X + 1) is None


small_polys = st.lists(st.integers(-9, 9), min_size=1, max_size=6).map(
    lambda cs: IntPoly(tuple(cs))
)


@given(small_polys, small_polys)
def test_gcd_divides_both(f, g):
    d = poly_gcd(f, g)
    if d.is_zero():
        assert f.is_zero() and g.is_zero()
        return
    if not f.is_zero():
        assert f.try_exact_div(d) is not None or (f.primitive().try_exact_div(d) is not None)
    if not g.is_zero():
        assert g.primitive().try_exact_div(d.primitive()) is not None


def test_gcd_known():
    f = (X - 1) ** 2 * (X + 3)
    g = (X - 1) * (X + 5)
    assert poly_gcd(f, g) == X - 1
    assert poly_gcd(6 * (X - 1), IntPoly((4,))) == IntPoly((2,))


def test_squarefree_and_yun():
    f = (X - 1) ** 3 * (X + 2) ** 2 * (X ** 2 + 1)
    assert squarefree_part(f) == (X - 1) * (X + 2) * (X ** 2 + 1)
    dec = yun_decomposition(f)
    assert dec == [(X ** 2 + 1, 1), (X + 2, 2), (X - 1, 3)]


def test_resultant_matches_root_product():
    # res(f, g) = lc(f)^deg g * prod g(root of f)
    f = (X - 2) * (X - 5)
    g = X ** 2 + 1
    assert resultant(f, g) == g(2) * g(5)
    assert resultant(g, f) == resultant(f, g)  # even degrees: sign symmetric


def test_discriminant_quadratic_formula():
    # [oracle] disc(ax^2 + bx + c) = b^2 - 4ac
    for a, b, c in [(1, 1, -1), (2, 3, 1), (1, 0, -5), (3, -7, 2)]:
        assert discriminant(IntPoly((c, b, a))) == b * b - 4 * a * c


def test_discriminant_golden_ratio_poly():
    assert discriminant(X ** 2 + X - 1) == 5


def test_discriminant_product_of_linears():
    # [oracle] disc of a monic poly with integer roots r_i is
    # prod_{i<j} (r_i - r_j)^2
    roots = [8, 2, -1, -4]
    f = IntPoly.from_roots(roots)
    expected = 1
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            expected *= (roots[i] - roots[j]) ** 2
    assert expected == 34992 ** 2 == 1224440064
    assert discriminant(f) == expected


def test_newton_power_sums_frozen_example():
    f = (X - 2) * (X ** 2 + X - 1) ** 2
    assert newton_power_sums(f, 3) == [5, 0, 10]


def test_newton_power_sums_equal_companion_traces():
    # p_i = tr(C^i) for the companion matrix C of f
    from qpgdb.matrices import IntMatrix, mat_powers

    f = X ** 4 - 3 * X ** 3 + 2 * X - 7
    n = f.degree
    comp = [[0] * n for _ in range(n)]
    for i in range(1, n):
        comp[i][i - 1] = 1
    for i in range(n):
        comp[i][n - 1] = -f.coeffs[i]
    c = IntMatrix(tuple(tuple(r) for r in comp))
    powers = mat_powers(c, 7)
    sums = newton_power_sums(f, 7)
    assert sums == [m.trace() for m in powers]


@given(st.lists(st.integers(-6, 6), min_size=2, max_size=5, unique=True))
def test_isolation_finds_all_integer_roots(roots):
    f = IntPoly.from_roots(roots)
    encs = isolate_real_roots(f)
    assert len(encs) == len(roots)
    for e, r in zip(encs, sorted(roots)):
        assert e.lo <= r <= e.hi
        ref = e.refined_to(Fraction(1, 1024))
        assert ref.lo <= r <= ref.hi


def test_isolation_irrational():
    f = X ** 2 - 5
    encs = isolate_real_roots(f)
    assert len(encs) == 2
    lo_enc = encs[0].refined_to(Fraction(1, 10 ** 6))
    # encloses -sqrt(5), so the endpoints bracket it: lo^2 > 5 > hi^2
    assert lo_enc.lo < lo_enc.hi < 0
    assert lo_enc.lo ** 2 > 5 > lo_enc.hi ** 2
    assert lo_enc.width <= Fraction(1, 10 ** 6)
    assert not lo_enc.is_exact()


def test_isolation_exact_hit_collapses():
    encs = isolate_real_roots(X ** 3 - 4 * X)  # roots -2, 0, 2
    vals = []
    for e in encs:
        e = e.refined_to(Fraction(1, 2 ** 20))
        if e.is_exact():
            vals.append(e.lo)
        else:
            vals.append((e.lo + e.hi) / 2)
    assert [round(v) for v in vals] == [-2, 0, 2]


def test_isolation_no_real_roots():
    assert isolate_real_roots(X ** 2 + 1) == []
    assert len(isolate_real_roots(X ** 4 + 1)) == 0


def test_isolation_multiple_roots_ignored():
    encs = isolate_real_roots((X - 1) ** 3)
    assert len(encs) == 1


def test_cauchy_bound():
    f = X ** 3 - 10 * X + 1
    b = cauchy_root_bound(f)
    for e in isolate_real_roots(f):
        assert -b <= e.lo and e.hi <= b


def test_sturm_chain_counts():
    chain = sturm_chain((X ** 2 - 2) * (X ** 2 - 3))
    from qpgdb.polynomials import _sign_variations

    assert _sign_variations(chain, Fraction(-10)) - _sign_variations(
        chain, Fraction(10)
    ) == 4

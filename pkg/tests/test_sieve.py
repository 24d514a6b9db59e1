"""Arithmetic sieve stages, with small worked schemes as ground truth."""

from fractions import Fraction

import pytest

from qpgdb.arrays import parse_array
from qpgdb.factorint import factor_over_integers
from qpgdb.matrices import minimal_polynomial
from qpgdb.polynomials import IntPoly, discriminant
from qpgdb.sieve import (
    MultiplicityProfile,
    frame_check,
    handshake_check,
    multiplicity_candidates,
    trace_check,
)
from qpgdb.sita import derive_sita


def basis_of(text):
    out = derive_sita(parse_array(text))
    assert out.ok, (out.reason, out.detail)
    return out.basis


def mu_of(basis):
    return minimal_polynomial(basis.matrices[1])


def test_handshake_pentagon():
    assert handshake_check(basis_of("[[2,2],[1]]"))


def test_handshake_icosahedron():
    assert handshake_check(basis_of("[[5,5,1],[2,0;5]]"))


def test_handshake_rejects_odd_row_entry():
    # 3-regular scheme on 7 vertices: k_1 = 3 odd, (B_1)_{1,2} = 1 odd
    assert not handshake_check(basis_of("[[3,3],[1]]"))


def test_handshake_accepts_petersen():
    # k_1 = 3 odd with lambda_{112} = 1: only row 1 of B_1 is constrained
    assert handshake_check(basis_of("[[3,6],[1]]"))


def test_multiplicities_pentagon():
    b = basis_of("[[2,2],[1]]")
    fp = factor_over_integers(mu_of(b))
    profiles = multiplicity_candidates(fp, b.valencies)
    assert len(profiles) == 1
    p = profiles[0]
    assert p.factors == (IntPoly((-1, 1, 1)),)
    assert p.multiplicities == (2,)
    assert p.frame_number == 125


def test_multiplicities_rank3_rational():
    b = basis_of("[[8,16,2],[3,0;8]]")
    profiles = multiplicity_candidates(factor_over_integers(mu_of(b)), b.valencies)
    tuples = [p.multiplicities for p in profiles]
    # the list keeps every solution of the two linear equations; the
    # genuine multiplicity vector for the factor order x-2, x+1, x+4
    # must be among them
    assert (12, 8, 6) in tuples
    assert all(
        1 + sum(g.degree * m for g, m in zip(p.factors, p.multiplicities)) == 27
        for p in profiles
    )
    assert all(
        sum(g.coeffs[-2] * m for g, m in zip(p.factors, p.multiplicities)) == 8
        for p in profiles
    )


def test_multiplicities_missing_perron():
    fp = factor_over_integers(IntPoly((-1, 1, 1)))
    with pytest.raises(ValueError, match="not a factor"):
        multiplicity_candidates(fp, (2, 2))


def test_multiplicities_unsolvable():
    # (x-2)(x+1)(x+2) with k_1 = 2: m_1 + 2 m_2 = 2 has no all-positive
    # solution
    fp = factor_over_integers(
        IntPoly((-2, 1)) * IntPoly((1, 1)) * IntPoly((2, 1))
    )
    assert multiplicity_candidates(fp, (2, 2)) == []


def test_frame_pentagon():
    b = basis_of("[[2,2],[1]]")
    fp = factor_over_integers(mu_of(b))
    (p,) = multiplicity_candidates(fp, b.valencies)
    disc = discriminant(mu_of(b))
    assert disc == 125
    f, integral, square = frame_check(p, disc)
    assert f == 125 and integral and square


def test_frame_rank3():
    b = basis_of("[[8,16,2],[3,0;8]]")
    mu = mu_of(b)
    profiles = multiplicity_candidates(factor_over_integers(mu), b.valencies)
    good = next(p for p in profiles if p.multiplicities == (12, 8, 6))
    disc = discriminant(mu)
    assert disc == 34992 ** 2
    f, integral, square = frame_check(good, disc)
    assert f == 236196 and integral and square
    assert disc // 236196 == 72 ** 2


def test_frame_rejects_non_divisor():
    b = basis_of("[[2,2],[1]]")
    (p,) = multiplicity_candidates(factor_over_integers(mu_of(b)), b.valencies)
    _, integral, square = frame_check(p, 126)
    assert integral and not square


def test_trace_pentagon():
    b = basis_of("[[2,2],[1]]")
    (p,) = multiplicity_candidates(factor_over_integers(mu_of(b)), b.valencies)
    out = trace_check(p, b.matrices[1])
    assert out.integral and out.walks_match
    assert out.normalized[:3] == (Fraction(1), Fraction(0), Fraction(2))


def test_trace_complete_graph():
    b = basis_of("[[6],[]]")
    (p,) = multiplicity_candidates(factor_over_integers(mu_of(b)), b.valencies)
    assert p.multiplicities == (6,)
    out = trace_check(p, b.matrices[1])
    assert out.integral and out.walks_match
    assert out.normalized[1] == 0


def test_trace_filters_false_profiles():
    # nine two-equation solutions for [[8,16,2],[3,0;8]]; power-sum
    # integrality keeps three, the walk-count refinement exactly one
    b = basis_of("[[8,16,2],[3,0;8]]")
    profiles = multiplicity_candidates(factor_over_integers(mu_of(b)), b.valencies)
    assert len(profiles) == 9
    integral = [
        p.multiplicities
        for p in profiles
        if trace_check(p, b.matrices[1]).integral
    ]
    assert integral == [(9, 14, 3), (12, 8, 6), (15, 2, 9)]
    full = [
        p.multiplicities
        for p in profiles
        if trace_check(p, b.matrices[1]).walks_match
    ]
    assert full == [(12, 8, 6)]


def test_trace_walk_mismatch_detected():
    b = basis_of("[[8,16,2],[3,0;8]]")
    profiles = multiplicity_candidates(factor_over_integers(mu_of(b)), b.valencies)
    bad = next(p for p in profiles if p.multiplicities == (9, 14, 3))
    out = trace_check(bad, b.matrices[1])
    assert not out.walks_match


def test_profile_invariant_asserts():
    with pytest.raises(AssertionError):
        MultiplicityProfile(
            (IntPoly((-1, 1, 1)),), (3,), (2, 2), Fraction(1)
        )

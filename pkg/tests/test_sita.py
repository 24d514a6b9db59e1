"""Derivation and verification of SITA bases from parameter arrays."""

from fractions import Fraction

import pytest

from qpgdb.arrays import parse_array, reconstruct_all
from qpgdb.matrices import IntMatrix, minimal_polynomial
from qpgdb.polynomials import IntPoly
from qpgdb.sita import (
    FailureReason,
    NotConnected,
    SitaBasis,
    derive_sita,
    distance_partition,
    is_p_polynomial,
    orthogonal_polys,
)


def valid_basis(text):
    out = derive_sita(parse_array(text))
    assert out.ok, (out.reason, out.detail)
    return out.basis


def test_pentagon_valid():
    b = valid_basis("[[2,2],[1]]")
    assert b.matrices[1].rows == ((0, 2, 0), (1, 0, 1), (0, 1, 1))
    assert b.matrices[2].rows == ((0, 0, 2), (0, 1, 1), (1, 1, 0))
    # f_2 = x^2 - 2
    assert b.polys[2] == (Fraction(-2), Fraction(0), Fraction(1))


def test_pentagon_structure_constants():
    b = valid_basis("[[2,2],[1]]")
    # B_2 B_2 = 2 B_0 + 1 B_1 + 0 B_2 on the 5-cycle
    assert b.lam(2, 2, 0) == 2
    assert b.lam(2, 2, 1) == 1
    assert b.lam(2, 2, 2) == 0


def test_rank3_paper_example_minpoly():
    b = valid_basis("[[8,16,2],[3,0;8]]")
    # (x-8)(x-2)(x+1)(x+4)
    assert minimal_polynomial(b.matrices[1]) == IntPoly((64, 40, -30, -5, 1))


def test_icosahedron_minpoly():
    b = valid_basis("[[5,5,1],[2,0;5]]")
    # (x-5)(x+1)(x^2-5)
    assert minimal_polynomial(b.matrices[1]) == IntPoly((25, 20, -10, -4, 1))


def test_polys_reproduce_matrices():
    for text in ("[[2,2],[1]]", "[[5,5,1],[2,0;5]]", "[[9,2,12,18],[9,0,3;0,0;6]]"):
        b = valid_basis(text)
        n1 = b.d + 1
        for i, f in enumerate(b.polys):
            power = IntMatrix.identity(n1)
            total = [[Fraction(0)] * n1 for _ in range(n1)]
            for c in f:
                for r in range(n1):
                    for cc in range(n1):
                        total[r][cc] += c * power.rows[r][cc]
                power = power * b.matrices[1]
            assert all(
                total[r][c] == b.matrices[i].rows[r][c]
                for r in range(n1)
                for c in range(n1)
            )
        assert orthogonal_polys(b)[0] == (Fraction(1),) + (Fraction(0),) * b.d


def test_f1_is_x():
    b = valid_basis("[[8,16,2],[3,0;8]]")
    assert b.polys[1] == (Fraction(0), Fraction(1), Fraction(0), Fraction(0))


def test_complete_graph():
    b = valid_basis("[[6],[]]")
    assert b.matrices[1].rows == ((0, 6), (1, 5))
    assert is_p_polynomial(b)


def test_degree_deficient():
    out = derive_sita(parse_array("[[2,2],[0]]"))
    assert out.reason is FailureReason.DEGREE_DEFICIENT
    assert out.status == "Fail"


def test_span_deficient():
    out = derive_sita(parse_array("[[3,3,3],[1,1;0]]"))
    assert out.reason is FailureReason.SPAN_DEFICIENT


def test_non_integral_basis():
    out = derive_sita(parse_array("[[4,2,2],[0,2;1]]"))
    assert out.reason is FailureReason.NON_INTEGRAL_BASIS


def test_negative_basis():
    out = derive_sita(parse_array("[[4,2],[2]]"))
    assert out.reason is FailureReason.NEGATIVE_BASIS


def test_axiom_violation_reciprocity():
    # hand-built B_1 whose off-diagonal entries break reciprocity; the
    # basis derivation itself succeeds, the closure checks must object
    bad_b1 = IntMatrix(((0, 2, 0), (1, 0, 1), (0, 2, 0)))
    out = derive_sita(parse_array("[[2,2],[2]]"), b1=bad_b1)
    assert out.reason is FailureReason.AXIOM_VIOLATION


def test_lambda_mismatch():
    good_b1 = IntMatrix(((0, 3, 0), (1, 1, 1), (0, 1, 2)))
    out = derive_sita(parse_array("[[3,3],[2]]"), b1=good_b1)
    assert out.reason is FailureReason.LAMBDA_MISMATCH


def test_reciprocity_invariant_on_valid():
    b = valid_basis("[[9,2,12,18],[9,0,3;0,0;6]]")
    k = (1,) + b.valencies
    n1 = b.d + 1
    for i in range(n1):
        for j in range(n1):
            for l in range(n1):
                assert b.lam(i, j, l) * k[l] == b.lam(i, l, j) * k[j]
                assert b.lam(i, j, l) == b.lam(j, i, l)


def test_array_roundtrip():
    for text in ("[[2,2],[1]]", "[[5,5,1],[2,0;5]]", "[[8,16,2],[3,0;8]]"):
        b = valid_basis(text)
        again = derive_sita(b.to_array())
        assert again.ok
        assert again.basis == b


def test_reconstruct_roundtrip():
    for text in ("[[2,2],[1]]", "[[5,5,1],[2,0;5]]", "[[9,2,12,18],[9,0,3;0,0;6]]"):
        b = valid_basis(text)
        mats = reconstruct_all(b.to_full_parameter_set())
        assert tuple(mats) == b.matrices


def test_distance_partition_pentagon():
    b = valid_basis("[[2,2],[1]]")
    part = distance_partition(b)
    assert part.blocks == ((0,), (1,), (2,))
    assert part.diameter == 2
    assert is_p_polynomial(b)


def test_distance_partition_icosahedron():
    b = valid_basis("[[5,5,1],[2,0;5]]")
    part = distance_partition(b)
    assert part.blocks == ((0,), (1,), (2,), (3,))
    assert is_p_polynomial(b)


def test_heptagon_p_polynomial():
    b = valid_basis("[[2,2,2],[1,0;1]]")
    assert distance_partition(b).blocks == ((0,), (1,), (2,), (3,))
    assert is_p_polynomial(b)


def test_rank4_not_p_polynomial():
    b = valid_basis("[[9,2,12,18],[9,0,3;0,0;6]]")
    part = distance_partition(b)
    assert any(len(block) > 1 for block in part.blocks)
    assert not is_p_polynomial(b)


def test_not_connected_guard():
    # fabricated disconnected basis; only the guard is of interest here
    b1 = IntMatrix(((0, 2, 0), (1, 1, 0), (0, 0, 2)))
    fake = SitaBasis(
        valencies=(2, 2),
        matrices=(IntMatrix.identity(3), b1, IntMatrix.identity(3)),
        lambdas=(((0,),),),
        polys=((Fraction(1),),),
        min_poly=IntPoly((0, 1)),
    )
    with pytest.raises(NotConnected):
        distance_partition(fake)

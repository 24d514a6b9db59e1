"""Array grammar, B_1 construction and Prop.-1 style reconstruction.

The cycle schemes are the ground truth here: for C_5 and C_7 every
intersection number is recounted directly on the graph, then compared
with what the module builds from the packed array.
"""

import pytest

from qpgdb.arrays import (
    ArrayFormatError,
    FullParameterSet,
    Inconsistent,
    NegativeDiagonal,
    ReciprocityNonIntegral,
    array_from_b1,
    build_B1,
    canonicalize,
    format_array,
    lambda_triples,
    parse_array,
    reconstruct_all,
)
from qpgdb.matrices import IntMatrix


# --- direct-count oracle on cycle graphs -----------------------------------


def cycle_relation_matrices(m):
    d = m // 2
    return [
        [
            [1 if min((x - y) % m, (y - x) % m) == dist else 0 for y in range(m)]
            for x in range(m)
        ]
        for dist in range(d + 1)
    ]


def oracle_lambda(rel, i, j, l):
    """Count common neighbours over every representative pair, and check
    the count really is pair-independent."""
    m = len(rel[0])
    counts = {
        sum(1 for z in range(m) if rel[i][x][z] and rel[j][z][y])
        for x in range(m)
        for y in range(m)
        if rel[l][x][y]
    }
    assert len(counts) == 1, "not an association scheme?"
    return counts.pop()


def oracle_intersection_matrix(rel, i):
    d = len(rel) - 1
    return IntMatrix(
        tuple(
            tuple(oracle_lambda(rel, i, c, r) for c in range(d + 1))
            for r in range(d + 1)
        )
    )


# --- parsing ----------------------------------------------------------------


def test_parse_pentagon():
    a = parse_array("[[2,2],[1]]")
    assert a.d == 2
    assert a.valencies == (2, 2)
    assert a.groups == ((1,),)
    assert a.order == 5


def test_parse_rank3():
    a = parse_array("[[5,5,1],[2,0;5]]")
    assert a.d == 3
    assert a.valencies == (5, 5, 1)
    assert a.groups == ((2, 0), (5,))
    assert a.order == 12


def test_parse_rank4():
    a = parse_array("[[9,2,12,18],[9,0,3;0,0;6]]")
    assert a.d == 4
    assert a.order == 42


def test_parse_whitespace_insensitive():
    a = parse_array("  [[ 2 , 2 ],\n\t[ 1 ]]  ")
    assert format_array(a) == "[[2,2],[1]]"


def test_parse_d1():
    a = parse_array("[[4],[]]")
    assert a.d == 1
    assert a.groups == ()
    assert format_array(a) == "[[4],[]]"


def test_format_parse_roundtrip():
    for text in ("[[2,2],[1]]", "[[5,5,1],[2,0;5]]", "[[9,2,12,18],[9,0,3;0,0;6]]"):
        assert format_array(parse_array(text)) == text


@pytest.mark.parametrize(
    "text,pos",
    [
        ("[2,2],[1]]", 1),          # missing second bracket
        ("[[2,2],[1]", 10),         # input ends early
        ("[[2,-2],[1]]", 4),        # negative entry
        ("[[0,2],[1]]", 2),         # zero valency
        ("[[2,2],[1]]x", 11),       # trailing junk
    ],
)
def test_parse_error_positions(text, pos):
    with pytest.raises(ArrayFormatError) as exc:
        parse_array(text)
    assert exc.value.position == pos


def test_parse_wrong_group_count():
    with pytest.raises(ArrayFormatError, match="lambda groups"):
        parse_array("[[2,2],[1;2]]")


def test_parse_wrong_group_length():
    with pytest.raises(ArrayFormatError, match="group 1"):
        parse_array("[[2,2],[1,3]]")


# --- B_1 construction -------------------------------------------------------


def test_pentagon_b1_explicit():
    b1 = build_B1(parse_array("[[2,2],[1]]"))
    assert b1.rows == ((0, 2, 0), (1, 0, 1), (0, 1, 1))


def test_pentagon_b1_against_cycle_count():
    rel = cycle_relation_matrices(5)
    assert build_B1(parse_array("[[2,2],[1]]")) == oracle_intersection_matrix(rel, 1)


def test_heptagon_b1_against_cycle_count():
    rel = cycle_relation_matrices(7)
    assert build_B1(parse_array("[[2,2,2],[1,0;1]]")) == oracle_intersection_matrix(
        rel, 1
    )


def test_b1_rows_sum_to_k1():
    b1 = build_B1(parse_array("[[9,2,12,18],[9,0,3;0,0;6]]"))
    for r in range(1, 5):
        assert sum(b1.rows[r]) == 9
    assert b1.rows[1][0] == 1


def test_b1_weighted_column_identity():
    a = parse_array("[[5,5,1],[2,0;5]]")
    b1 = build_B1(a)
    k = (1,) + a.valencies
    for j in range(a.d + 1):
        assert sum(b1.rows[l][j] * k[l] for l in range(a.d + 1)) == a.valencies[0] * k[j]


def test_reciprocity_failure():
    with pytest.raises(ReciprocityNonIntegral):
        build_B1(parse_array("[[3,5],[2]]"))


def test_negative_diagonal():
    with pytest.raises(NegativeDiagonal):
        build_B1(parse_array("[[2,2],[3]]"))


def test_array_from_b1_roundtrip():
    a = parse_array("[[9,2,12,18],[9,0,3;0,0;6]]")
    assert array_from_b1(a.valencies, build_B1(a)) == a


# --- reconstruction ---------------------------------------------------------


def test_reconstruct_pentagon():
    rel = cycle_relation_matrices(5)
    fp = FullParameterSet.from_mapping(
        (2, 2), {t: oracle_lambda(rel, *t) for t in lambda_triples(2)}
    )
    mats = reconstruct_all(fp)
    assert mats[0] == IntMatrix.identity(3)
    assert mats[1] == oracle_intersection_matrix(rel, 1)
    assert mats[2] == oracle_intersection_matrix(rel, 2)
    assert mats[2].rows == ((0, 0, 2), (0, 1, 1), (1, 1, 0))


def test_reconstruct_heptagon():
    rel = cycle_relation_matrices(7)
    fp = FullParameterSet.from_mapping(
        (2, 2, 2), {t: oracle_lambda(rel, *t) for t in lambda_triples(3)}
    )
    mats = reconstruct_all(fp)
    for i in range(4):
        assert mats[i] == oracle_intersection_matrix(rel, i)


def test_reconstruct_complete_graph():
    fp = FullParameterSet((6,), ())
    mats = reconstruct_all(fp)
    assert mats[1].rows == ((0, 6), (1, 5))


def test_reconstruct_inconsistent():
    # pentagon data with lambda_112 bumped: rows cannot sum to 2
    fp = FullParameterSet((2, 2), (5,))
    with pytest.raises(Inconsistent):
        reconstruct_all(fp)


def test_lambda_triple_count():
    for d in range(2, 9):
        want = sum(s * (s + 1) // 2 for s in range(1, d))
        assert len(list(lambda_triples(d))) == want


# --- canonicalization -------------------------------------------------------


def conjugate_by(rows, new_of_old):
    n = len(rows)
    out = [[0] * n for _ in range(n)]
    for r in range(n):
        for c in range(n):
            out[new_of_old[r]][new_of_old[c]] = rows[r][c]
    return out


def test_canonicalize_idempotent():
    a = parse_array("[[5,5,1],[2,0;5]]")
    first, key1 = canonicalize(a)
    second, key2 = canonicalize(first)
    assert first == second
    assert key1 == key2


def test_canonicalize_orbit_constant():
    a = parse_array("[[8,6,12],[4,2;2]]")
    b1 = build_B1(a)
    # relabel classes 2 and 3 by hand, then re-pack the array
    swapped_rows = conjugate_by([list(r) for r in b1.rows], (0, 1, 3, 2))
    ks = (a.valencies[0], a.valencies[2], a.valencies[1])
    swapped = array_from_b1(ks, IntMatrix(tuple(tuple(r) for r in swapped_rows)))
    assert swapped != a
    assert canonicalize(a)[1] == canonicalize(swapped)[1]


def test_canonicalize_separates_inequivalent():
    key_a = canonicalize(parse_array("[[8,6,12],[4,2;2]]"))[1]
    key_b = canonicalize(parse_array("[[8,16,2],[3,0;8]]"))[1]
    assert key_a != key_b


def test_canonicalize_rank4_orbit():
    a = parse_array("[[9,2,12,18],[9,0,3;0,0;6]]")
    b1 = build_B1(a)
    for new_of_old in ((0, 1, 3, 4, 2), (0, 1, 4, 2, 3), (0, 1, 2, 4, 3)):
        rows = conjugate_by([list(r) for r in b1.rows], new_of_old)
        ks = tuple(
            a.valencies[old - 1]
            for old in sorted(range(1, 5), key=lambda o: new_of_old[o])
        )
        img = array_from_b1(ks, IntMatrix(tuple(tuple(r) for r in rows)))
        assert canonicalize(img)[1] == canonicalize(a)[1]

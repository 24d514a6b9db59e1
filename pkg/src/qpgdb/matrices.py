"""Exact dense integer matrices, rational solves, minimal polynomials.

Matrices are small here (the standard representation of a rank-r scheme
is r x r with r <= 8), so everything is plain rows-of-tuples arithmetic
over Python ints and Fractions.
"""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction

from .polynomials import IntPoly


@dataclasses.dataclass(frozen=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(c) for c in r) for r in self.rows)
        assert rows, "empty matrix"
        width = len(rows[0])
        assert all(len(r) == width for r in rows)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        assert len(self.rows) == len(self.rows[0]), "not square"
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def first_row(self) -> tuple[int, ...]:
        return self.rows[0]

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.n))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        assert self.shape == other.shape
        return IntMatrix(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            )
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        assert self.shape == other.shape
        return IntMatrix(
            tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            )
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return IntMatrix(tuple(tuple(c * other for c in r) for r in self.rows))
        assert isinstance(other, IntMatrix)
        h, inner = self.shape
        inner2, w = other.shape
        assert inner == inner2
        cols = other.transpose().rows
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.rows
            )
        )

    def __rmul__(self, other):
        assert isinstance(other, int)
        return self * other

    def is_zero(self) -> bool:
        return all(not c for r in self.rows for c in r)


def mat_powers(m: IntMatrix, count: int) -> list[IntMatrix]:
    """[I, m, m**2, ..., m**(count-1)]."""
    out = [IntMatrix.identity(m.n)]
    for _ in range(count - 1):
        out.append(out[-1] * m)
    return out


def first_row_powers(m: IntMatrix, count: int) -> list[tuple[int, ...]]:
    """First rows of I, m, m**2, ... computed by iterated vector products."""
    n = m.n
    cols = list(zip(*m.rows))
    out = [tuple(int(j == 0) for j in range(n))]
    if count > 1:
        out.append(m.rows[0])
        v = m.rows[0]
        for _ in range(count - 2):
            v = tuple(sum(x * y for x, y in zip(v, col)) for col in cols)
            out.append(v)
    return out


def minimal_polynomial(m: IntMatrix) -> IntPoly:
    """Monic minimal polynomial via exact elimination on vectorized powers.

    Powers of m are flattened to vectors and reduced against an echelon
    basis over Q; the first linear dependence yields the (integer, by
    Gauss's lemma) monic minimal polynomial.
    """
    n = m.n
    basis = []  # (pivot, residual vector, combination coeffs), pivot-sorted
    power = IntMatrix.identity(n)
    k = 0
    while True:
        vec = [Fraction(c) for r in power.rows for c in r]
        combo = [Fraction(0)] * k + [Fraction(1)]
        for pivot, row, expr in basis:
            f = vec[pivot] / row[pivot]
            if f:
                vec = [a - f * b for a, b in zip(vec, row)]
                for i, e in enumerate(expr):
                    combo[i] -= f * e
        nz = next((i for i, c in enumerate(vec) if c), None)
        if nz is None:
            assert all(c.denominator == 1 for c in combo)
            return IntPoly(tuple(c.numerator for c in combo))
        basis.append((nz, vec, combo))
        basis.sort(key=lambda t: t[0])
        power = power * m
        k += 1
        assert k <= n * n + 1


def scaled_int_inverse(rows):
    """Rows of the exact inverse as (den, int row) pairs, or None if singular.

    Row i of the inverse is w_i / den_i with den_i > 0.  Fraction-free
    Gauss-Jordan with per-row content reduction keeps every intermediate
    an int, which is much cheaper than Fraction arithmetic at these sizes.
    """
    n = len(rows)
    a = [
        [int(c) for c in r] + [int(i == j) for j in range(n)]
        for i, r in enumerate(rows)
    ]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                row = [p * x - f * y for x, y in zip(a[r], a[col])]
                g = math.gcd(*row)
                a[r] = [x // g for x in row] if g > 1 else row
    out = []
    for r in range(n):
        den = a[r][r]
        w = a[r][n:]
        if den < 0:
            den, w = -den, [-x for x in w]
        out.append((den, w))
    return out


def first_dependency(rows) -> tuple[int, list[int]] | None:
    """First row dependent on its predecessors, with an integer witness.

    Returns (r, q) where row r is the first one in the span of rows
    0..r-1 and q is a content-1 integer vector of length r+1 with
    q[r] > 0 and sum(q[j] * rows[j]) = 0.  None if all rows are
    independent.
    """
    basis = []  # (pivot, reduced vector, combination), insertion order
    for r, row in enumerate(rows):
        vec = list(row)
        combo = [0] * r + [1]
        for pivot, bvec, bcombo in basis:
            f = vec[pivot]
            if f:
                pv = bvec[pivot]
                vec = [pv * x - f * y for x, y in zip(vec, bvec)]
                combo = [
                    pv * x - f * (bcombo[i] if i < len(bcombo) else 0)
                    for i, x in enumerate(combo)
                ]
        nz = next((i for i, c in enumerate(vec) if c), None)
        if nz is None:
            g = math.gcd(*combo)
            if g > 1:
                combo = [c // g for c in combo]
            if combo[r] < 0:
                combo = [-c for c in combo]
            assert combo[r] > 0
            return r, combo
        g = math.gcd(*vec, *combo)
        if g > 1:
            vec = [c // g for c in vec]
            combo = [c // g for c in combo]
        basis.append((nz, vec, combo))
    return None


def is_matrix_root(m: IntMatrix, coeffs) -> bool:
    """Whether sum(coeffs[j] * m**j) is the zero matrix."""
    n = m.n
    cols = list(zip(*m.rows))
    acc = [[coeffs[0] * int(r == c) for c in range(n)] for r in range(n)]
    power = [list(row) for row in m.rows]
    for j in range(1, len(coeffs)):
        cj = coeffs[j]
        if cj:
            for r in range(n):
                acc[r] = [x + cj * y for x, y in zip(acc[r], power[r])]
        if j + 1 < len(coeffs):
            power = [
                [sum(x * y for x, y in zip(row, col)) for col in cols]
                for row in power
            ]
    return all(not x for row in acc for x in row)


def krylov_degree(m: IntMatrix) -> int:
    """Degree of the minimal polynomial, by integer echelon reduction.

    Same dependence search as minimal_polynomial, but over ints, without
    tracking the combination and without intermediate IntMatrix objects,
    so it is cheap enough to run on every rejected candidate.
    """
    n = m.n
    cols = list(zip(*m.rows))
    basis = []  # (pivot, reduced int vector), in insertion order
    power = [[int(i == j) for j in range(n)] for i in range(n)]
    k = 0
    while True:
        vec = [c for r in power for c in r]
        for pivot, row in basis:
            f = vec[pivot]
            if f:
                p = row[pivot]
                vec = [p * x - f * y for x, y in zip(vec, row)]
        nz = next((i for i, c in enumerate(vec) if c), None)
        if nz is None:
            return k
        g = math.gcd(*vec)
        if g > 1:
            vec = [x // g for x in vec]
        basis.append((nz, vec))
        power = [
            [sum(a * b for a, b in zip(row, col)) for col in cols]
            for row in power
        ]
        k += 1
        assert k <= n + 1


def invert_fractions(rows):
    """Exact inverse of a square integer/rational matrix, or None if singular."""
    n = len(rows)
    a = [[Fraction(c) for c in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [c * inv for c in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [c - f * d for c, d in zip(a[r], a[col])]
    return [row[n:] for row in a]


def solve_left(inverse, target):
    """x with x * V = target, given inverse = V**-1 (rows of Fractions)."""
    n = len(inverse)
    return tuple(
        sum(target[i] * inverse[i][j] for i in range(n)) for j in range(n)
    )

"""From a parameter array to a verified standard integral table algebra.

The derivation is forced: the first rows of the powers of B_1 must form
a basis, each k_i e_i is expressed in that basis, and the coefficients
give the unique polynomials f_i with B_i = f_i(B_1).  Everything after
that is checking: entries must be nonnegative integers, the products
must close with nonnegative integer structure constants, and the array
must be what B_1 says it is.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .arrays import (
    FullParameterSet,
    ParameterArray,
    array_from_b1,
    build_B1,
    canonicalize,
)
from .matrices import (
    IntMatrix,
    first_dependency,
    first_row_powers,
    is_matrix_root,
    krylov_degree,
    scaled_int_inverse,
)
from .polynomials import IntPoly


class FailureReason(enum.Enum):
    DEGREE_DEFICIENT = "DegreeDeficient"
    SPAN_DEFICIENT = "SpanDeficient"
    NON_INTEGRAL_BASIS = "NonIntegralBasis"
    NEGATIVE_BASIS = "NegativeBasis"
    AXIOM_VIOLATION = "AxiomViolation"
    LAMBDA_MISMATCH = "LambdaMismatch"


class NotConnected(ValueError):
    """B_1 powers never reach some class; impossible for a valid basis."""


@dataclass(frozen=True)
class SitaBasis:
    valencies: tuple[int, ...]
    matrices: tuple[IntMatrix, ...]
    lambdas: tuple[tuple[tuple[int, ...], ...], ...]
    polys: tuple[tuple[Fraction, ...], ...]
    min_poly: IntPoly

    @property
    def d(self) -> int:
        return len(self.valencies)

    def lam(self, i: int, j: int, l: int) -> int:
        return self.lambdas[i][j][l]

    def to_array(self) -> ParameterArray:
        return array_from_b1(self.valencies, self.matrices[1])

    def to_full_parameter_set(self) -> FullParameterSet:
        d = self.d
        return FullParameterSet.from_mapping(
            self.valencies,
            {
                (i, j, l): self.lambdas[i][j][l]
                for i in range(1, d)
                for j in range(i, d)
                for l in range(j + 1, d + 1)
            },
        )


@dataclass(frozen=True)
class ValidationOutcome:
    basis: SitaBasis | None
    reason: FailureReason | None
    detail: str = ""

    def __post_init__(self):
        assert (self.basis is None) != (self.reason is None)

    @property
    def ok(self) -> bool:
        return self.basis is not None

    @property
    def status(self) -> str:
        return "Valid" if self.ok else "Fail"


def _fail(reason: FailureReason, detail: str) -> ValidationOutcome:
    return ValidationOutcome(None, reason, detail)


def _derive_core(a: ParameterArray, b1: IntMatrix | None):
    """SitaBasis for a valid array, else a compact failure token.

    Tokens carry just enough to reproduce the exact diagnostic later;
    building the strings (and classifying a rank failure, which costs
    matrix work) is deferred to _classify_failure so callers that only
    want the verdict never pay for it.
    """
    if b1 is None:
        b1 = build_B1(a)
    d = a.d
    n1 = d + 1
    k = (1,) + tuple(a.valencies)
    # boundary contract for supplied matrices; build_B1 output always has it
    assert b1.rows[0] == tuple(
        k[1] * int(c == 1) for c in range(n1)
    ), "row 0 of B_1 must be k_1 e_1"
    assert all(
        b1.rows[r][0] == int(r == 1) for r in range(n1)
    ), "column 0 of B_1 must indicate row 1"

    vs = first_row_powers(b1, n1 + 1)
    dep = first_dependency(vs)
    assert dep is not None, "n1 + 1 vectors in an n1-dim space"
    rdep, q = dep
    if rdep < n1:
        return ("rank", rdep, q, b1)

    vinv = scaled_int_inverse([list(vs[i]) for i in range(n1)])
    assert vinv is not None, "rows 0..n1-1 were just proved independent"

    # raw int rows throughout the hot path; IntMatrix wrapping waits until
    # the candidate has survived every cheap rejection.  B_0 and B_1 are
    # known outright, so reconstruction starts at class 2; their checks
    # reduce to scanning b1 itself for negative entries.
    rows1 = [list(rw) for rw in b1.rows]
    raw = [[[int(r == c) for c in range(n1)] for r in range(n1)], rows1]

    scaled: list[tuple[int, list[list[int]]]] = []  # den, k_i * num matrix
    if n1 > 2:
        cols1 = list(zip(*b1.rows))
        powers = [raw[0], rows1]
        for _ in range(n1 - 2):
            powers.append(
                [
                    [sum(x * y for x, y in zip(row, col)) for col in cols1]
                    for row in powers[-1]
                ]
            )
        for i in range(2, n1):
            den, w = vinv[i]
            ki = k[i]
            acc = [[0] * n1 for _ in range(n1)]
            for p in range(n1):
                wp = ki * w[p]
                if wp:
                    pw = powers[p]
                    for r in range(n1):
                        acc[r] = [x + wp * y for x, y in zip(acc[r], pw[r])]
            scaled.append((den, acc))

    for i, (den, sm) in enumerate(scaled, start=2):
        for r in range(n1):
            for c in range(n1):
                if sm[r][c] % den:
                    return ("nonintegral", i, r, c, sm[r][c], den)
    for r in range(n1):
        for c in range(n1):
            if rows1[r][c] < 0:
                return ("negative", 1, r, c, rows1[r][c], 1)
    for i, (den, sm) in enumerate(scaled, start=2):
        for r in range(n1):
            for c in range(n1):
                if sm[r][c] < 0:
                    return ("negative", i, r, c, sm[r][c], den)

    raw.extend([[x // den for x in row] for row in sm] for den, sm in scaled)

    # structure constants from first rows: row 0 of B_i B_j is
    # k_i * (row i of B_j), and it must equal sum_l lambda_{ijl} k_l e_l
    lam = [[[0] * n1 for _ in range(n1)] for _ in range(n1)]
    for i in range(n1):
        for j in range(n1):
            rowi = raw[j][i]
            for l in range(n1):
                num = k[i] * rowi[l]
                if num % k[l]:
                    return ("lambda", i, j, l, num, k[l])
                lam[i][j][l] = num // k[l]

    # B_i B_j = sum_l lambda_{ijl} B_l needs no product comparison: every
    # B_i is a polynomial in B_1, so products stay in the span of the
    # B_1 powers, where an element is pinned down by its first row (the
    # power rows are independent), and the first rows of both sides agree
    # by the definition of lambda just checked integral.  What is not
    # automatic: the identity coefficients and reciprocity.
    for i in range(n1):
        for j in range(n1):
            if lam[i][j][0] != (k[i] if i == j else 0):
                return ("identity", i, j, lam[i][j][0])
            for l in range(n1):
                if lam[i][j][l] * k[l] != lam[i][l][j] * k[j]:
                    return ("reciprocity", i, j, l)

    for j in range(1, d + 1):
        for l in range(j + 1, d + 1):
            if b1.rows[l][j] != a.lam(j, l):
                return ("mismatch", j, l, b1.rows[l][j], a.lam(j, l))

    # with the first n1 power rows independent the minimal polynomial has
    # full degree n1, so the dependency at row n1 is mu itself; mu is monic
    # over the integers, hence the content-1 relation is exactly it
    assert q[n1] == 1, "minimal polynomial must be monic integral"
    mu = IntPoly(tuple(q))

    # survivors are rare enough that the exact (Fraction) artifacts and
    # IntMatrix wrappers are built only now

    polys = [
        tuple(Fraction(k[i] * w[p], den) for p in range(n1))
        for i, (den, w) in enumerate(vinv)
    ]
    mats = [IntMatrix(tuple(tuple(row) for row in m)) for m in raw]
    assert mats[0] == IntMatrix.identity(n1) and mats[1] == b1

    return SitaBasis(
        valencies=tuple(a.valencies),
        matrices=tuple(mats),
        lambdas=tuple(tuple(tuple(row) for row in plane) for plane in lam),
        polys=tuple(polys),
        min_poly=mu,
    )


def _classify_failure(token) -> ValidationOutcome:
    kind = token[0]
    if kind == "rank":
        _, rdep, q, b1 = token
        n1 = b1.n
        # the relation among the first rows certifies the degree only if
        # it annihilates the whole matrix; otherwise fall back to the
        # full Krylov computation for the honest degree
        if is_matrix_root(b1, q):
            return _fail(
                FailureReason.DEGREE_DEFICIENT,
                f"minimal polynomial degree {rdep}, need {n1}",
            )
        deg = krylov_degree(b1)
        if deg != n1:
            return _fail(
                FailureReason.DEGREE_DEFICIENT,
                f"minimal polynomial degree {deg}, need {n1}",
            )
        return _fail(
            FailureReason.SPAN_DEFICIENT,
            "first rows of B_1 powers are dependent",
        )
    if kind == "nonintegral":
        _, i, r, c, num, den = token
        return _fail(
            FailureReason.NON_INTEGRAL_BASIS,
            f"B_{i}[{r},{c}] = {Fraction(num, den)}",
        )
    if kind == "negative":
        _, i, r, c, num, den = token
        return _fail(
            FailureReason.NEGATIVE_BASIS,
            f"B_{i}[{r},{c}] = {Fraction(num, den)}",
        )
    if kind == "lambda":
        _, i, j, l, num, kl = token
        return _fail(
            FailureReason.AXIOM_VIOLATION,
            f"lambda_{{{i},{j},{l}}} = {num}/{kl} is not integral",
        )
    if kind == "identity":
        _, i, j, val = token
        return _fail(
            FailureReason.AXIOM_VIOLATION,
            f"lambda_{{{i},{j},0}} = {val}",
        )
    if kind == "reciprocity":
        _, i, j, l = token
        return _fail(
            FailureReason.AXIOM_VIOLATION,
            f"reciprocity fails at ({i},{j},{l})",
        )
    assert kind == "mismatch"
    _, j, l, got, said = token
    return _fail(
        FailureReason.LAMBDA_MISMATCH,
        f"B_1[{l},{j}] = {got} but the array says {said}",
    )


def derive_sita(a: ParameterArray, b1: IntMatrix | None = None) -> ValidationOutcome:
    """Derive and verify the unique SITA basis candidate for the array.

    ``b1`` may be supplied by callers that already built it; it is then
    additionally checked against the array (LambdaMismatch on conflict).
    """
    got = _derive_core(a, b1)
    if isinstance(got, SitaBasis):
        return ValidationOutcome(got, None)
    return _classify_failure(got)


def derive_basis(a: ParameterArray, b1: IntMatrix | None = None) -> SitaBasis | None:
    """derive_sita without diagnostics: the basis, or None if invalid.

    Skips the failure classification entirely, which matters in the
    search loop where most candidates are invalid and get discarded
    unread.
    """
    got = _derive_core(a, b1)
    return got if isinstance(got, SitaBasis) else None


def orthogonal_polys(b: SitaBasis) -> list[tuple[Fraction, ...]]:
    """The unique f_0 = 1, f_1 = x, ..., f_d with B_i = f_i(B_1)."""
    return list(b.polys)


def generating_classes(b: SitaBasis) -> tuple[int, ...]:
    """Classes g whose B_g generates the full algebra.

    Any such class can serve as the distinguished edge class, so each one
    yields a parameter array presenting the same algebra.  Class 1 always
    qualifies for a derived basis.
    """
    return tuple(
        g for g in range(1, b.d + 1)
        if krylov_degree(b.matrices[g]) == b.d + 1
    )


def regenerated_array(b: SitaBasis, g: int) -> ParameterArray:
    """The parameter array of the same algebra with class g first.

    Classes are relabeled by sigma = (0, g, rest ascending) and the array
    is read off the permuted B_g, exactly as build_B1 lays it out:
    entry (r, c) of the new B_1 is lambda'_{1,c,r} = lambda_{g,sigma(c),sigma(r)}.
    The result need not be in search-normal form; canonicalize() is the
    caller's job.
    """
    d = b.d
    assert 1 <= g <= d
    old_of = (0, g) + tuple(t for t in range(1, d + 1) if t != g)
    bg = b.matrices[g].rows
    k = (1,) + b.valencies
    vals = tuple(k[old_of[t]] for t in range(1, d + 1))
    groups = tuple(
        tuple(bg[old_of[l]][old_of[j]] for l in range(j + 1, d + 1))
        for j in range(1, d)
    )
    return ParameterArray(vals, groups)


def scheme_key(b: SitaBasis) -> str:
    """Canonical key minimized over every generating class.

    Two arrays describe the same algebra up to relabeling iff their
    scheme keys agree: regeneration sweeps the choice of edge class and
    canonicalize() the labeling of the remaining classes.
    """
    best: tuple[tuple, str] | None = None
    for g in generating_classes(b):
        cand, text = canonicalize(regenerated_array(b, g))
        tupled = (cand.valencies, cand.groups)
        if best is None or tupled < best[0]:
            best = (tupled, text)
    assert best is not None
    return best[1]


@dataclass(frozen=True)
class DistancePartition:
    blocks: tuple[tuple[int, ...], ...]

    @property
    def diameter(self) -> int:
        return len(self.blocks) - 1


def distance_partition(b: SitaBasis) -> DistancePartition:
    """Group classes by the first B_1 power whose top row touches them."""
    n1 = b.d + 1
    b1 = b.matrices[1]
    dist: dict[int, int] = {0: 0}
    v = tuple(int(c == 0) for c in range(n1))
    step = 0
    while len(dist) < n1 and step <= n1:
        step += 1
        v = tuple(
            sum(v[i] * b1.rows[i][j] for i in range(n1)) for j in range(n1)
        )
        for j in range(n1):
            if v[j] and j not in dist:
                dist[j] = step
    if len(dist) < n1:
        missing = sorted(set(range(n1)) - set(dist))
        raise NotConnected(f"classes {missing} unreachable from class 0")
    diameter = max(dist.values())
    blocks = tuple(
        tuple(sorted(j for j, s in dist.items() if s == t))
        for t in range(diameter + 1)
    )
    return DistancePartition(blocks)


def is_p_polynomial(b: SitaBasis) -> bool:
    """Distance-regular shape: one class per distance and, with classes
    listed in distance order, a tridiagonal B_1."""
    part = distance_partition(b)
    if any(len(block) != 1 for block in part.blocks):
        return False
    order = [block[0] for block in part.blocks]
    b1 = b.matrices[1]
    n1 = b.d + 1
    for r in range(n1):
        for c in range(n1):
            if abs(r - c) > 1 and b1.rows[order[r]][order[c]] != 0:
                return False
    return True

"""Arithmetic feasibility sieve for verified SITA bases.

Four necessary conditions for a basis to come from an actual scheme on
n vertices: a parity (handshaking) condition on intersection matrix
rows, existence of integer eigenvalue multiplicities, integrality
and square-compatibility of the Frame number against the discriminant,
and integrality of the standard trace on small adjacency powers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .factorint import FactoredPolynomial
from .matrices import IntMatrix, first_row_powers
from .polynomials import IntPoly, is_perfect_square, newton_power_sums
from .sita import SitaBasis


def handshake_check(b: SitaBasis) -> bool:
    """Row i of B_i must be even where k_i is odd and larger than 1.

    Inside a fixed A_i-neighborhood (k_i vertices) the relation-j graph
    is lambda_{iji}-regular, so k_i * lambda_{iji} is twice its edge
    count; odd k_i forces every (B_i)_{i,j} with j > 0 even.  The
    column entries lambda_{iij} are only constrained at odd k_j, which
    reciprocity then gives for free (the Petersen basis has k_1 = 3
    with lambda_{112} = 1, so the stronger all-column reading is
    wrong).
    """
    n1 = b.d + 1
    for i in range(1, n1):
        ki = b.valencies[i - 1]
        if ki > 1 and ki % 2 == 1:
            row = b.matrices[i].rows[i]
            if any(row[j] % 2 for j in range(1, n1)):
                return False
    return True


@dataclass(frozen=True)
class MultiplicityProfile:
    """Multiplicities m_t >= 1 for the nontrivial irreducible factors of
    mu_1; the factor (x - k_1) always carries multiplicity 1."""

    factors: tuple[IntPoly, ...]
    multiplicities: tuple[int, ...]
    valencies: tuple[int, ...]
    frame_number: Fraction

    def __post_init__(self):
        assert len(self.factors) == len(self.multiplicities)
        assert all(m >= 1 for m in self.multiplicities)
        n = self.n
        k1 = self.valencies[0]
        assert 1 + sum(
            g.degree * m for g, m in zip(self.factors, self.multiplicities)
        ) == n, "order equation violated"
        assert k1 == sum(
            g.coeffs[-2] * m for g, m in zip(self.factors, self.multiplicities)
        ), "eigenvalue sum (column orthogonality at j=0) violated"

    @property
    def n(self) -> int:
        return 1 + sum(self.valencies)


def _frame_number(valencies, factors, mults) -> Fraction:
    n = 1 + sum(valencies)
    d = len(valencies)
    return Fraction(
        n ** (d + 1) * prod(valencies),
        prod(m ** g.degree for g, m in zip(factors, mults)),
    )


def multiplicity_candidates(
    fp: FactoredPolynomial, valencies
) -> list[MultiplicityProfile]:
    """All solutions (m_1..m_t) of the order and eigenvalue-sum equations.

    fp must be the factorization of the (squarefree, monic) mu_1 and
    must contain the Perron factor (x - k_1).  Solutions are listed in
    lexicographic order of the multiplicity tuple.
    """
    k1 = valencies[0]
    n = 1 + sum(valencies)
    if fp.unit != 1 or fp.content != 1 or not fp.is_squarefree():
        raise ValueError("expected a monic squarefree factorization")
    perron = IntPoly((-k1, 1))
    polys = [g for g, _ in fp.factors]
    if perron not in polys:
        raise ValueError(f"(x - {k1}) is not a factor")
    gs = [g for g in polys if g != perron]
    degs = [g.degree for g in gs]
    tops = [g.coeffs[-2] for g in gs]
    t = len(gs)
    suffix_deg = [sum(degs[i:]) for i in range(t + 1)]

    out: list[MultiplicityProfile] = []

    def reach(idx: int, rem_deg: int) -> tuple[int, int]:
        # bounds for sum(tops[s]*m_s, s >= idx) when each m_s >= 1 and the
        # degree budget is rem_deg; caps are relaxed per-factor
        lo = hi = 0
        for s in range(idx, t):
            cap = (rem_deg - (suffix_deg[idx] - degs[s])) // degs[s]
            a, b = tops[s], tops[s] * cap
            lo += min(a, b)
            hi += max(a, b)
        return lo, hi

    def emit(acc: list[int]) -> None:
        mults = tuple(acc)
        out.append(
            MultiplicityProfile(
                tuple(gs), mults, tuple(valencies),
                _frame_number(valencies, gs, mults),
            )
        )

    def rec(idx: int, rem_deg: int, rem_top: int, acc: list[int]):
        if idx == t:
            if rem_deg == 0 and rem_top == 0:
                emit(acc)
            return
        if idx == t - 2:
            # two unknowns, two equations: solve instead of looping
            da, db = degs[idx], degs[idx + 1]
            ta, tb = tops[idx], tops[idx + 1]
            det = da * tb - db * ta
            if det:
                x_num = rem_deg * tb - rem_top * db
                y_num = rem_top * da - rem_deg * ta
                if x_num % det == 0 and y_num % det == 0:
                    x, y = x_num // det, y_num // det
                    if x >= 1 and y >= 1:
                        emit(acc + [x, y])
                return
        lo, hi = reach(idx, rem_deg)
        if not (lo <= rem_top <= hi):
            return
        nd, gt = degs[idx], tops[idx]
        max_m = (rem_deg - suffix_deg[idx + 1]) // nd
        for m in range(1, max_m + 1):
            rec(idx + 1, rem_deg - nd * m, rem_top - gt * m, acc + [m])

    rec(0, n - 1, k1, [])
    return out


def frame_check(p: MultiplicityProfile, disc: int) -> tuple[Fraction, bool, bool]:
    """(F, F integral, disc/F a perfect integer square)."""
    f = p.frame_number
    integral = f.denominator == 1
    square = (
        integral
        and f > 0
        and disc % f.numerator == 0
        and is_perfect_square(disc // f.numerator)
    )
    return f, integral, square


@dataclass(frozen=True)
class TraceOutcome:
    integral: bool
    walks_match: bool
    normalized: tuple[Fraction, ...]  # tr(A_1^i)/n for i = 0..d+1


def trace_check(p: MultiplicityProfile, b1: IntMatrix) -> TraceOutcome:
    """Standard-trace integrality on adjacency powers.

    The would-be adjacency matrix has characteristic polynomial
    (x - k_1) * prod g_t^{m_t}; its power sums are k_1^i plus the
    m_t-weighted factor power sums, no expansion needed.  Each tr/n
    must be a nonnegative integer, and (the stricter walk refinement)
    must equal the closed-walk count (B_1^i)_{0,0}.
    """
    k1 = p.valencies[0]
    n = p.n
    count = len(p.valencies) + 2
    per_factor = [newton_power_sums(g, count) for g in p.factors]
    walks = first_row_powers(b1, count)
    integral = True
    match = True
    normalized = []
    for i in range(count):
        total = k1 ** i + sum(
            m * ps[i] for m, ps in zip(p.multiplicities, per_factor)
        )
        q = Fraction(total, n)
        normalized.append(q)
        if q.denominator != 1 or q < 0:
            integral = False
        if q != walks[i][0]:
            match = False
    return TraceOutcome(integral, match, tuple(normalized))

"""Spectral feasibility layer: eigenmatrices, Krein parameters, dual flags.

A valid basis plus a multiplicity profile pins down the spectral side of
a putative scheme.  The eigenvalues of B_1 are the roots of mu_1, so each
one lives on an irreducible factor g, and every eigenmatrix entry f_j(theta)
is an element of Q[x]/(g).  That keeps the layer exact:

* zero tests are residue tests -- g is irreducible, so a nonzero residue
  never evaluates to zero at a root of g;
* sums over a full set of conjugate roots collapse to trace forms, which
  is how the column orthogonality relations are decided without numerics;
* genuinely mixed values (Krein parameters spanning several factors,
  partial conjugate sums) get their sign from bisection enclosures.  When
  an enclosure straddles zero it is pushed below a separation bound for
  algebraic integers, upgrading "straddles" to a certified zero.  Only a
  blown refinement budget reports indeterminate, and an indeterminate
  Krein value never counts as a pass.
"""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction

from .factorint import FactoredPolynomial
from .intervals import Interval, eval_poly
from .matrices import krylov_degree
from .polynomials import (
    IntPoly,
    RootEnclosure,
    cauchy_root_bound,
    isolate_real_roots,
    newton_power_sums,
)
from .sieve import MultiplicityProfile
from .sita import SitaBasis
from .splitting import is_abelian_splitting_field

__all__ = [
    "EigenSlot",
    "SpectralData",
    "spectral_data",
    "krein_sign",
    "krein_and_absolute_bound",
    "noncyclotomic",
    "polynomial_in",
    "copolynomial_in",
]

ORTHOGONALITY_METHOD = "exact-trace-form"

# Bisection budget for certified sign decisions.  A nonzero value is
# conclusive once the enclosure width drops below the separation bound;
# this caps how many doubling bits we are willing to spend getting there.
_MAX_CERT_BITS = 32768


# ---------------------------------------------------------------------------
# residue arithmetic in Q[x]/(g) for a monic integer g


def _rem(coeffs, g: IntPoly) -> tuple[Fraction, ...]:
    """Reduce a lowest-first rational coefficient list mod monic g.

    Returns a tuple of length exactly deg g.
    """
    assert g.is_monic() and g.degree >= 1
    e = g.degree
    r = [Fraction(c) for c in coeffs]
    for i in range(len(r) - 1, e - 1, -1):
        q = r[i]
        if q:
            for j in range(e + 1):
                r[i - e + j] -= q * g.coeffs[j]
    del r[e:]
    r.extend([Fraction(0)] * (e - len(r)))
    return tuple(r)


def _mul_lists(a, b) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _res_mul(a, b, g: IntPoly) -> tuple[Fraction, ...]:
    return _rem(_mul_lists(a, b), g)


def _res_add(a, b) -> tuple[Fraction, ...]:
    return tuple(x + y for x, y in zip(a, b))


def _res_scale(a, c: Fraction) -> tuple[Fraction, ...]:
    return tuple(x * c for x in a)


def _compose_linear(coeffs, c0: Fraction, c1: Fraction) -> list[Fraction]:
    """p(c0 + c1*x) for a lowest-first rational coefficient list."""
    out = [Fraction(0)]
    for c in reversed(list(coeffs)):
        nxt = [Fraction(0)] * (len(out) + 1)
        for h, a in enumerate(out):
            nxt[h] += a * c0
            nxt[h + 1] += a * c1
        nxt[0] += Fraction(c)
        while len(nxt) > 1 and not nxt[-1]:
            nxt.pop()
        out = nxt
    return out


# ---------------------------------------------------------------------------
# spectral data


@dataclasses.dataclass
class EigenSlot:
    """One eigenvalue of B_1: the irreducible factor it is a root of, the
    scheme multiplicity it carries, and a refinable enclosure."""

    factor: IntPoly
    multiplicity: int
    enclosure: RootEnclosure  # replaced by tighter enclosures as needed

    def interval(self) -> Interval:
        return Interval(self.enclosure.lo, self.enclosure.hi)


@dataclasses.dataclass
class SpectralData:
    """Eigenvalues, eigenmatrix residues and derived spectral quantities.

    Slot 0 is the Perron eigenvalue k_1; slots 1..d hold the remaining
    eigenvalues in strictly descending order.  residues[i][j] is f_j
    reduced mod the factor of slot i, so p_i(j) = residues[i][j](theta_i);
    for slots on linear factors the residue is a single Fraction and the
    entry is exact.
    """

    basis: SitaBasis
    profile: MultiplicityProfile
    slots: tuple[EigenSlot, ...]
    residues: tuple[tuple[tuple[Fraction, ...], ...], ...]
    orthogonality: str  # "pass" | "fail"
    orthogonality_method: str = ORTHOGONALITY_METHOD

    def __post_init__(self):
        self._power_sums: dict[IntPoly, list[int]] = {}

    @property
    def order(self) -> int:
        return 1 + sum(self.basis.valencies)

    def class_valency(self, j: int) -> int:
        return 1 if j == 0 else self.basis.valencies[j - 1]

    def trace_power_sums(self, g: IntPoly) -> list[int]:
        ps = self._power_sums.get(g)
        if ps is None:
            ps = newton_power_sums(g, g.degree)
            self._power_sums[g] = ps
        return ps

    def eigenvalue_interval(self, i: int) -> Interval:
        return self.slots[i].interval()

    def p_interval(self, i: int, j: int) -> Interval:
        return eval_poly(self.residues[i][j], self.eigenvalue_interval(i))

    def p_exact(self, i: int, j: int) -> Fraction | None:
        """Exact rational value of p_i(j), or None for an irrational slot."""
        if self.slots[i].factor.degree == 1:
            return self.residues[i][j][0]
        return None

    def q_interval(self, j: int, i: int) -> Interval:
        scale = Fraction(self.slots[i].multiplicity, self.class_valency(j))
        return self.p_interval(i, j).scaled(scale)

    def refine(self, rounds: int = 1) -> None:
        for slot in self.slots:
            enc = slot.enclosure
            for _ in range(rounds):
                enc = enc.refine()
            slot.enclosure = enc

    def refine_to(self, width: Fraction) -> None:
        for slot in self.slots:
            slot.enclosure = slot.enclosure.refined_to(width)

    def krein_interval(self, i: int, j: int, k: int) -> Interval:
        pref = Fraction(
            self.slots[i].multiplicity * self.slots[j].multiplicity, self.order
        )
        return _s_interval(self, (i, j, k)).scaled(pref)

    def pq_identity_within(self, width: Fraction) -> bool:
        """Refine until every (P*Q) entry is narrower than ``width``, then
        check that n*I is contained entrywise."""
        n = self.order
        dd = self.basis.d
        for _ in range(256):
            entries = {}
            widest = Fraction(0)
            for a in range(dd + 1):
                for b in range(dd + 1):
                    acc = Interval.exact(0)
                    for j in range(dd + 1):
                        scale = Fraction(
                            self.slots[b].multiplicity, self.class_valency(j)
                        )
                        acc = acc + self.p_interval(a, j) * self.p_interval(
                            b, j
                        ).scaled(scale)
                    entries[a, b] = acc
                    widest = max(widest, acc.width)
            if widest <= width:
                return all(
                    iv.contains(Fraction(n if a == b else 0))
                    for (a, b), iv in entries.items()
                )
            self.refine()
        raise AssertionError("P*Q enclosures failed to reach the requested width")


def _eigen_slots(
    basis: SitaBasis, profile: MultiplicityProfile
) -> tuple[EigenSlot, ...]:
    k1 = basis.valencies[0]
    perron_poly = IntPoly((-k1, 1))
    slots = [EigenSlot(perron_poly, 1, RootEnclosure(perron_poly, Fraction(k1), Fraction(k1)))]
    for g, m in zip(profile.factors, profile.multiplicities):
        encs = isolate_real_roots(g)
        assert len(encs) == g.degree, "eigenvalues of a valid basis are totally real"
        for enc in encs:
            slots.append(EigenSlot(g, m, enc))
    assert len(slots) == basis.d + 1

    def separated(a: EigenSlot, b: EigenSlot) -> bool:
        return a.enclosure.hi <= b.enclosure.lo or b.enclosure.hi <= a.enclosure.lo

    changed = True
    while changed:
        changed = False
        for x in range(len(slots)):
            for y in range(x + 1, len(slots)):
                while not separated(slots[x], slots[y]):
                    slots[x].enclosure = slots[x].enclosure.refine()
                    slots[y].enclosure = slots[y].enclosure.refine()
                    changed = True
    slots.sort(key=lambda s: (s.enclosure.lo, s.enclosure.hi), reverse=True)
    assert slots[0].factor == perron_poly
    assert sum(s.multiplicity for s in slots) == 1 + sum(basis.valencies)
    return tuple(slots)


def _orthogonality_ok(basis: SitaBasis, profile: MultiplicityProfile) -> bool:
    """Column orthogonality sum_i m_i p_i(j) p_i(l) = delta_jl * n * k_j,
    decided exactly by summing the trace form of f_j*f_l over each factor."""
    d = basis.d
    n = 1 + sum(basis.valencies)
    kk = (1,) + basis.valencies
    k1 = basis.valencies[0]
    forms = [
        (g, m, newton_power_sums(g, g.degree))
        for g, m in zip(profile.factors, profile.multiplicities)
    ]
    for j in range(d + 1):
        fj = basis.polys[j]
        pj0 = sum(c * k1**h for h, c in enumerate(fj))
        for l in range(j, d + 1):
            fl = basis.polys[l]
            pl0 = sum(c * k1**h for h, c in enumerate(fl))
            total = pj0 * pl0
            prod = _mul_lists(fj, fl)
            for g, m, ps in forms:
                res = _rem(prod, g)
                total += m * sum(c * p for c, p in zip(res, ps))
            if total != (n * kk[j] if j == l else 0):
                return False
    return True


def spectral_data(b: SitaBasis, p: MultiplicityProfile) -> SpectralData:
    assert b.valencies == p.valencies
    slots = _eigen_slots(b, p)
    residues = tuple(
        tuple(_rem(b.polys[j], slot.factor) for j in range(b.d + 1)) for slot in slots
    )
    # structural invariants of the eigenmatrix: the Perron row carries the
    # valencies, and f_0 = 1 makes column 0 all ones
    kk = (1,) + b.valencies
    assert all(residues[0][j] == (Fraction(kk[j]),) for j in range(b.d + 1))
    one = (Fraction(1),) + (Fraction(0),) * 10
    assert all(residues[i][0] == one[: len(residues[i][0])] for i in range(b.d + 1))
    ortho = "pass" if _orthogonality_ok(b, p) else "fail"
    return SpectralData(b, p, slots, residues, ortho)


# ---------------------------------------------------------------------------
# certified sign decisions


def _certified_sign(
    make_interval, refine, scale_den: int, degree_bound: int, magnitude_bound: int
) -> int | None:
    """Sign of an algebraic number v enclosed by make_interval().

    scale_den * v must be an algebraic integer whose degree is at most
    degree_bound and whose conjugates are bounded by magnitude_bound in
    absolute value.  A nonzero such integer u satisfies
    |u| >= magnitude_bound**-(degree_bound - 1) -- the product of all
    conjugates of its minimal factor is a nonzero rational integer -- so
    once the enclosure is narrower than that floor, straddling zero
    certifies v = 0.  Returns None only if the refinement budget runs out.

    refine(steps) sharpens the underlying enclosures by that many
    bisection bits; steps double between evaluations so the enclosure
    cost is logarithmic in the precision finally needed.
    """
    iv = make_interval()
    sg = iv.sign()
    if sg is not None:
        return sg
    spent, step = 0, 1
    while spent < 64:
        refine(step)
        spent += step
        step *= 2
        iv = make_interval()
        sg = iv.sign()
        if sg is not None:
            return sg
    m = max(magnitude_bound, 2)
    eps = Fraction(1, scale_den * m ** max(degree_bound - 1, 0))
    ratio = iv.width / eps
    bits = max(0, int(ratio.numerator // ratio.denominator).bit_length())
    if bits > _MAX_CERT_BITS:
        return None
    while iv.width >= eps and spent <= 2 * bits + 128:
        refine(step)
        spent += step
        step *= 2
        iv = make_interval()
        sg = iv.sign()
        if sg is not None:
            return sg
    if iv.width < eps:
        sg = iv.sign()
        return 0 if sg is None else sg
    return None


def _lcm_denominators(coeffs) -> int:
    out = 1
    for c in coeffs:
        out = math.lcm(out, Fraction(c).denominator)
    return out


# ---------------------------------------------------------------------------
# Krein parameters


def _round_out(iv: Interval, bits: int) -> Interval:
    """Smallest interval with denominator-2**bits endpoints containing iv.

    Outward rounding keeps every enclosure honest while stopping the
    endpoint fractions from accumulating huge denominators under long
    products; the loss is at most 2**(1-bits) of extra width.
    """
    scale = 1 << bits
    lo = iv.lo
    hi = iv.hi
    return Interval(
        Fraction(lo.numerator * scale // lo.denominator, scale),
        Fraction(-((-hi.numerator * scale) // hi.denominator), scale),
    )


def _rounding_bits(widths) -> int:
    """Enough dyadic precision that rounding noise is far below the
    genuine width of the narrowest contributing enclosure."""
    bits = 64
    for w in widths:
        if w > 0:
            bits = max(
                bits, w.denominator.bit_length() - w.numerator.bit_length() + 33
            )
    return bits


def _s_interval(s: SpectralData, trip: tuple[int, int, int]) -> Interval:
    """Enclosure of sum_u f_u(th_i) f_u(th_j) f_u(th_k) / k_u**2."""
    ivs = {a: s.eigenvalue_interval(a) for a in set(trip)}
    bits = _rounding_bits(iv.width for iv in ivs.values())
    total = Interval.exact(0)
    for u in range(s.basis.d + 1):
        term = Interval.exact(Fraction(1, s.class_valency(u) ** 2))
        for a in trip:
            term = term * _round_out(eval_poly(s.residues[a][u], ivs[a]), bits)
            term = _round_out(term, bits)
        total = total + term
    return total


def _collapsed_krein_sign(s: SpectralData, trip, irr) -> int:
    """All irrational slots of the triple live in one quadratic or are one
    repeated slot, so the whole sum is a residue in a single field."""
    a = irr[0]
    g = s.slots[a].factor
    e = g.degree
    conj: dict[int, tuple[Fraction, ...]] = {}
    if len(irr) == 2:
        # both roots of a quadratic: the other root is (trace - theta_a)
        tr = Fraction(-g.coeffs[1])
        for u in range(s.basis.d + 1):
            conj[u] = _rem(_compose_linear(s.basis.polys[u], tr, Fraction(-1)), g)
    total = (Fraction(0),) * e
    for u in range(s.basis.d + 1):
        scalar = Fraction(1, s.class_valency(u) ** 2)
        res: tuple[Fraction, ...] = (Fraction(1),) + (Fraction(0),) * (e - 1)
        for p_slot in trip:
            if s.slots[p_slot].factor.degree == 1:
                scalar *= s.residues[p_slot][u][0]
            elif p_slot == a:
                res = _res_mul(res, s.residues[a][u], g)
            else:
                res = _res_mul(res, conj[u], g)
        total = _res_add(total, _res_scale(res, scalar))
    if all(c == 0 for c in total):
        return 0
    # nonzero residue in an irreducible quotient never vanishes at a root,
    # so plain bisection must eventually decide the sign
    guard = 0
    while True:
        sg = eval_poly(total, s.eigenvalue_interval(a)).sign()
        if sg is not None:
            return sg
        s.slots[a].enclosure = s.slots[a].enclosure.refine()
        guard += 1
        assert guard < 100_000


def _certified_krein_sign(s: SpectralData, trip) -> int | None:
    uniq = sorted(set(trip))
    by_factor: dict[IntPoly, int] = {}
    for a in uniq:
        by_factor[s.slots[a].factor] = by_factor.get(s.slots[a].factor, 0) + 1
    dprime = 1
    for g, cnt in by_factor.items():
        for step in range(cnt):
            dprime *= g.degree - step
    root_bound = {a: cauchy_root_bound(s.slots[a].factor) for a in uniq}

    dens = []
    for u in range(s.basis.d + 1):
        du = s.class_valency(u) ** 2
        for a in trip:
            du *= _lcm_denominators(s.residues[a][u])
        dens.append(du)
    scale = math.lcm(*dens)
    mag = 0
    for u in range(s.basis.d + 1):
        bound = Fraction(scale, s.class_valency(u) ** 2)
        for a in trip:
            bound *= sum(
                abs(c) * root_bound[a] ** h for h, c in enumerate(s.residues[a][u])
            )
        mag += math.ceil(bound)

    def refine(steps: int) -> None:
        for a in uniq:
            enc = s.slots[a].enclosure
            for _ in range(steps):
                enc = enc.refine()
            s.slots[a].enclosure = enc

    return _certified_sign(
        lambda: _s_interval(s, trip), refine, scale, dprime, mag
    )


def krein_sign(s: SpectralData, i: int, j: int, k: int) -> int | None:
    """Certified sign of the Krein parameter q^k_{ij}: -1, 0 or 1, or None
    when the refinement budget is exhausted (treated as indeterminate)."""
    trip = (i, j, k)
    irr = sorted({a for a in trip if s.slots[a].factor.degree > 1})
    if not irr:
        val = Fraction(0)
        for u in range(s.basis.d + 1):
            term = Fraction(1, s.class_valency(u) ** 2)
            for a in trip:
                term *= s.residues[a][u][0]
            val += term
        return 0 if val == 0 else (1 if val > 0 else -1)
    g = s.slots[irr[0]].factor
    if all(s.slots[a].factor == g for a in irr) and (len(irr) == 1 or g.degree == 2):
        return _collapsed_krein_sign(s, trip, irr)
    return _certified_krein_sign(s, trip)


def krein_and_absolute_bound(s: SpectralData) -> tuple[str, bool]:
    """Nonnegativity of all Krein parameters and the absolute bound.

    The bound sums m_k over parameters *certified* nonzero; a parameter
    whose sign could not be certified is left out, which can only make the
    bound easier to satisfy, never harder -- the sieve must not overclaim.
    """
    d = s.basis.d
    # the underlying sum is symmetric in all three indices, so one sign
    # decision per index multiset covers every (i, j, k) arrangement
    cache: dict[tuple[int, int, int], int | None] = {}
    signs: dict[tuple[int, int, int], int | None] = {}
    for i in range(d + 1):
        for j in range(i, d + 1):
            for k in range(d + 1):
                key = tuple(sorted((i, j, k)))
                if key not in cache:
                    cache[key] = krein_sign(s, *key)
                signs[i, j, k] = cache[key]
    if any(sg == -1 for sg in signs.values()):
        verdict = "fail"
    elif any(sg is None for sg in signs.values()):
        verdict = "indeterminate"
    else:
        verdict = "pass"
    bound_ok = True
    for i in range(d + 1):
        mi = s.slots[i].multiplicity
        for j in range(i, d + 1):
            mj = s.slots[j].multiplicity
            total = sum(
                s.slots[k].multiplicity
                for k in range(d + 1)
                if signs[i, j, k] in (1, -1)
            )
            cap = mi * (mi + 1) // 2 if i == j else mi * mj
            if total > cap:
                bound_ok = False
    return verdict, bound_ok


# ---------------------------------------------------------------------------
# cyclotomicity and polynomial / copolynomial flags


def noncyclotomic(fp: FactoredPolynomial) -> bool:
    """True iff some irreducible factor has a nonabelian splitting field,
    i.e. some eigenvalue lies outside every cyclotomic field."""
    return any(not is_abelian_splitting_field(g) for g, _ in fp.factors)


def polynomial_in(b: SitaBasis, j: int) -> bool:
    """True iff B_j generates the full algebra, i.e. its minimal polynomial
    has the maximal degree d+1."""
    assert 1 <= j <= b.d
    return krylov_degree(b.matrices[j]) == b.d + 1


def copolynomial_in(s: SpectralData, subset) -> bool:
    """True iff the d+1 values sum_{i in subset} q_j(i), j = 0..d, are
    pairwise distinct.

    The difference over a pair (j, l) is, up to the positive constant
    1/(k_j k_l), the sum of m_i * h(theta_i) over the subset with
    h = k_l f_j - k_j f_l, and each zero test is decided exactly.
    """
    idx = sorted(set(subset))
    if not idx:
        raise ValueError("subset must be nonempty")
    if idx[0] < 1 or idx[-1] > s.basis.d:
        raise ValueError("subset must consist of nonprincipal indices 1..d")
    d = s.basis.d
    polys = s.basis.polys
    for j in range(d + 1):
        for l in range(j + 1, d + 1):
            kl = s.class_valency(l)
            kj = s.class_valency(j)
            h = [kl * polys[j][t] - kj * polys[l][t] for t in range(len(polys[j]))]
            if _conjugate_sum_is_zero(s, idx, h):
                return False
    return True


def _conjugate_sum_is_zero(s: SpectralData, idx, h) -> bool:
    """Decide sum_{i in idx} m_i * h(theta_i) == 0 exactly.

    Rational slots, full conjugate sets (trace forms) and constant residues
    are summed in Q.  A single leftover slot with a nonconstant residue is
    irrational by linear independence of 1, theta, ..., theta^(e-1), hence
    nonzero.  Anything messier goes to the certified separation bound.
    """
    groups: dict[IntPoly, list[int]] = {}
    for a in idx:
        groups.setdefault(s.slots[a].factor, []).append(a)
    rational = Fraction(0)
    pending = []  # (factor, slot indices, residue, multiplicity)
    for g, slots_g in groups.items():
        m = s.slots[slots_g[0]].multiplicity
        res = _rem(h, g)
        if all(c == 0 for c in res[1:]):
            rational += m * len(slots_g) * res[0]
        elif len(slots_g) == g.degree:
            rational += m * sum(c * p for c, p in zip(res, s.trace_power_sums(g)))
        else:
            pending.append((g, slots_g, res, m))
    if not pending:
        return rational == 0
    if len(pending) == 1 and len(pending[0][1]) == 1:
        return False

    den = rational.denominator
    dprime = 1
    mag = Fraction(abs(rational))
    for g, slots_g, res, m in pending:
        den = math.lcm(den, _lcm_denominators(res))
        dprime *= math.comb(g.degree, len(slots_g))
        rb = cauchy_root_bound(g)
        per_root = sum(abs(c) * rb**hh for hh, c in enumerate(res))
        mag += m * len(slots_g) * per_root

    def make_iv() -> Interval:
        used = [a for _, slots_g, _, _ in pending for a in slots_g]
        bits = _rounding_bits(s.eigenvalue_interval(a).width for a in used)
        total = Interval.exact(rational)
        for g, slots_g, res, m in pending:
            for a in slots_g:
                term = eval_poly(res, s.eigenvalue_interval(a)).scaled(Fraction(m))
                total = total + _round_out(term, bits)
        return total

    def refine(steps: int) -> None:
        for g, slots_g, res, m in pending:
            for a in slots_g:
                enc = s.slots[a].enclosure
                for _ in range(steps):
                    enc = enc.refine()
                s.slots[a].enclosure = enc

    sg = _certified_sign(make_iv, refine, den, dprime, math.ceil(den * mag))
    if sg is None:
        raise ArithmeticError(
            "copolynomial distinctness exceeded the refinement budget"
        )
    return sg == 0

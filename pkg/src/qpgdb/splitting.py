"""Abelian splitting-field test for irreducible integer polynomials.

By Kronecker-Weber a real algebraic number lies in a cyclotomic field
exactly when the splitting field of its minimal polynomial is abelian
over Q.  The test here is fully algebraic:

* degree 1 or 2 is always abelian;
* otherwise factor g over its own root field K = Q[y]/(g) by Trager's
  norm method; if g does not split into linear factors there, the
  splitting field is larger than K and the group is nonabelian for our
  purposes only after the size check below, so the verdict is driven by
  whether the n root maps commute.

A splitting field of degree n = deg g with pairwise commuting root maps
is abelian; everything else is not.  Two theorem-backed shortcuts give
fast nonabelian verdicts (odd degree with nonsquare discriminant, and
unequal irreducible factor degrees modulo a good prime); no shortcut is
ever used to conclude "abelian".
"""

from __future__ import annotations

import functools
from fractions import Fraction

from .factorint import factor_over_integers
from .polynomials import (
    IntPoly,
    bareiss_det,
    discriminant,
    is_perfect_square,
    poly_gcd,
)

_SCREEN_PRIMES = (5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43)


def _shift_candidates():
    yield 0
    s = 1
    while True:
        yield s
        yield -s
        s += 1


@functools.lru_cache(maxsize=None)
def is_abelian_splitting_field(g: IntPoly) -> bool:
    """True iff the splitting field of irreducible monic g is abelian."""
    assert g.is_monic() and g.degree >= 1
    n = g.degree
    if n <= 2:
        return True
    disc = discriminant(g)
    assert disc != 0, "input must be squarefree (irreducible)"
    if n % 2 == 1 and not is_perfect_square(disc):
        # an abelian group of odd order acts by even permutations, which
        # forces a square discriminant; nonsquare settles it
        return False
    if _has_unequal_factor_degrees_mod_p(g, disc):
        # some Frobenius element has a nonuniform cycle type, impossible
        # in a regular abelian action
        return False
    roots = _roots_over_own_field(g)
    if roots is None:
        return False  # g does not split in its root field
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if _k_compose(roots[i], roots[j], g) != _k_compose(roots[j], roots[i], g):
                return False
    return True


def _has_unequal_factor_degrees_mod_p(g: IntPoly, disc: int, tries: int = 4) -> bool:
    """Dedekind screen: unequal irreducible degrees mod p prove nonabelian."""
    used = 0
    for p in _SCREEN_PRIMES:
        if disc % p == 0:
            continue
        degs = _ddf_degrees(g, p)
        if len(set(degs)) > 1:
            return True
        used += 1
        if used >= tries:
            break
    return False


def _ddf_degrees(g: IntPoly, p: int) -> list[int]:
    """Degrees of the irreducible factors of g mod p (distinct-degree)."""
    from .factorint import _gf_divmod, _gf_gcd, _gf_monic, _gf_pow_mod, _gf_strip

    f = _gf_monic(_gf_strip([c % p for c in g.coeffs]), p)
    out: list[int] = []
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _gf_pow_mod([0, 1], p ** d, f, p)
        delta = h + [0] * (2 - len(h))
        delta[1] = (delta[1] - 1) % p
        part = _gf_gcd(f, _gf_strip(delta), p)
        if len(part) - 1 >= 1:
            out.extend([d] * ((len(part) - 1) // d))
            f, rem = _gf_divmod(f, part, p)
            assert not rem
    if len(f) - 1 >= 1:
        out.append(len(f) - 1)
    return out


# ---------------------------------------------------------------------------
# arithmetic in K = Q[y]/(g): elements are Fraction tuples, lowest first


def _k_reduce(coeffs, g: IntPoly):
    n = g.degree
    cs = [Fraction(c) for c in coeffs]
    for i in range(len(cs) - 1, n - 1, -1):
        q = cs[i]
        if q:
            for j, a in enumerate(g.coeffs[:-1]):
                cs[i - n + j] -= q * a
        cs[i] = Fraction(0)
    cs = cs[:n]
    while len(cs) < n:
        cs.append(Fraction(0))
    return tuple(cs)


def _k_mul(a, b, g: IntPoly):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _k_reduce(out, g)


def _k_add(a, b):
    return tuple(x + y for x, y in zip(a, b))

def _k_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))

def _k_scale(a, c):
    return tuple(x * c for x in a)

def _k_is_zero(a) -> bool:
    return all(not c for c in a)


# plain Q[x] arithmetic on Fraction lists, lowest degree first


def _qp_strip(a: list[Fraction]) -> list[Fraction]:
    while a and not a[-1]:
        a.pop()
    return a


def _qp_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _qp_strip(out)


def _qp_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _qp_strip(out)


def _qp_divmod(a, b):
    assert b
    inv = 1 / b[-1]
    rem = list(a)
    db = len(b) - 1
    if len(rem) <= db:
        return [], _qp_strip(rem)
    quot = [Fraction(0)] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        q = rem[i] * inv
        quot[i - db] = q
        if q:
            for j, c in enumerate(b):
                rem[i - db + j] -= q * c
    return _qp_strip(quot), _qp_strip(rem[:db])


def _k_inv(a, g: IntPoly):
    """Inverse in K via the extended Euclidean algorithm over Q[x]."""
    r0 = [Fraction(c) for c in g.coeffs]
    r1 = _qp_strip([Fraction(c) for c in a])
    assert r1, "inverting zero"
    s0: list[Fraction] = []
    s1: list[Fraction] = [Fraction(1)]
    while r1:
        q, r = _qp_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qp_sub(s0, _qp_mul(q, s1))
    assert len(r0) == 1, "modulus not irreducible?"
    inv = 1 / r0[0]
    return _k_reduce([c * inv for c in s0], g)


def _k_compose(a, b, g: IntPoly):
    """a(b(alpha)) in K, for a, b in K viewed as polynomials in alpha."""
    acc = _k_reduce([], g)
    for c in reversed(a):
        acc = _k_mul(acc, b, g)
        acc = _k_add(acc, _k_reduce([c], g))
    return acc


# K[x] polynomials: lists of K elements, lowest degree first


def _kp_strip(A):
    while A and _k_is_zero(A[-1]):
        A.pop()
    return A


def _kp_rem(A, B, g: IntPoly):
    lead_inv = _k_inv(B[-1], g)
    rem = list(A)
    db = len(B) - 1
    for i in range(len(rem) - 1, db - 1, -1):
        f = _k_mul(rem[i], lead_inv, g)
        if not _k_is_zero(f):
            for j, c in enumerate(B):
                rem[i - db + j] = _k_sub(rem[i - db + j], _k_mul(f, c, g))
    return _kp_strip(rem[:db])


def _kp_gcd(A, B, g: IntPoly):
    A, B = _kp_strip(list(A)), _kp_strip(list(B))
    while B:
        A, B = B, _kp_rem(A, B, g)
    assert A
    lead_inv = _k_inv(A[-1], g)
    return [_k_mul(c, lead_inv, g) for c in A]


# ---------------------------------------------------------------------------
# Trager splitting of g over its own root field


def _roots_over_own_field(g: IntPoly):
    """All roots of g in K = Q[y]/(g) other than alpha, or None if g
    does not split into linear factors over K."""
    n = g.degree
    # synthetic division: g(x) / (x - alpha), coefficients in Z[alpha]
    h = [None] * n  # h[i] = IntPoly in alpha for the x^i coefficient
    h[n - 1] = IntPoly((1,))
    for i in range(n - 1, 0, -1):
        # b_{i-1} = a_i + alpha * b_i
        h[i - 1] = IntPoly(tuple(g.coeffs[i : i + 1])) + IntPoly((0, 1)) * h[i]
    norm = None
    shift = None
    for s in _shift_candidates():
        cand = _norm_of_shifted(g, h, s)
        if poly_gcd(cand, cand.derivative()).degree == 0:
            norm, shift = cand, s
            break
        assert abs(s) < 200, f"no squarefree norm shift for {g!r}"
    factors = factor_over_integers(norm)
    for poly, mult in factors.factors:
        assert mult == 1
        if poly.degree != n:
            return None
    roots = []
    h_k = [_k_reduce(p.coeffs, g) for p in h]
    for poly, _ in factors.factors:
        shifted = _rational_poly_at_x_plus_salpha(poly, shift, g)
        lin = _kp_gcd(h_k, shifted, g)
        assert len(lin) == 2, "norm factor of full degree must cut a linear piece"
        # monic linear x + c: root is -c
        roots.append(_k_scale(lin[0], Fraction(-1)))
    return roots


def _norm_of_shifted(g: IntPoly, h, s: int) -> IntPoly:
    """Norm_{K/Q} of h(x - s*alpha) as a polynomial in x.

    Computed as det of the multiplication operator on K, i.e. the
    resultant in alpha against g, via a fraction-free determinant of a
    matrix with integer-polynomial entries.
    """
    n = g.degree
    # expand h(x - s*y) as a polynomial in y with IntPoly-in-x coefficients
    by_ypow: dict[int, IntPoly] = {}
    for i, ci in enumerate(h):  # ci = IntPoly in y, term ci(y) * (x - s*y)**i
        # (x - s*y)^i = sum_k C(i,k) x^(i-k) (-s)^k y^k
        coeff = 1
        for k in range(i + 1):
            xpart = IntPoly((0,) * (i - k) + (coeff * (-s) ** k,))
            for yexp, cy in enumerate(ci.coeffs):
                if cy:
                    key = yexp + k
                    add = IntPoly(tuple(c * cy for c in xpart.coeffs))
                    by_ypow[key] = by_ypow.get(key, IntPoly()) + add
            coeff = coeff * (i - k) // (k + 1)
    # companion matrix of g and its powers
    comp = [[0] * n for _ in range(n)]
    for r in range(1, n):
        comp[r][r - 1] = 1
    for r in range(n):
        comp[r][n - 1] = -g.coeffs[r]
    maxpow = max(by_ypow) if by_ypow else 0
    powers = [[[int(r == c) for c in range(n)] for r in range(n)]]
    for _ in range(maxpow):
        prev = powers[-1]
        powers.append(
            [
                [sum(prev[r][t] * comp[t][c] for t in range(n)) for c in range(n)]
                for r in range(n)
            ]
        )
    zero = IntPoly()
    rows = [[zero for _ in range(n)] for _ in range(n)]
    for ypow, xpoly in by_ypow.items():
        mat = powers[ypow]
        for r in range(n):
            for c in range(n):
                if mat[r][c]:
                    rows[r][c] = rows[r][c] + IntPoly(
                        tuple(v * mat[r][c] for v in xpoly.coeffs)
                    )
    det = bareiss_det(rows, _poly_exact_div)
    assert isinstance(det, IntPoly)
    return det


def _poly_exact_div(a: IntPoly, b: IntPoly) -> IntPoly:
    q = a.try_exact_div(b)
    assert q is not None, "nonexact division in fraction-free determinant"
    return q


def _rational_poly_at_x_plus_salpha(poly: IntPoly, s: int, g: IntPoly):
    """K[x] representation of poly(x + s*alpha)."""
    alpha_s = _k_reduce([0, s], g)
    out = [_k_reduce([], g)]
    # Horner: result = result*(x + s*alpha) + c
    for c in reversed(poly.coeffs):
        shifted = [_k_reduce([], g)] + out  # multiply by x
        for i, kc in enumerate(out):
            shifted[i] = _k_add(shifted[i], _k_mul(kc, alpha_s, g))
        shifted[0] = _k_add(shifted[0], _k_reduce([c], g))
        out = shifted
    return _kp_strip(out)

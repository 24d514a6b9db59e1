"""Factorization of integer polynomials.

Classic Zassenhaus pipeline: squarefree decomposition, Berlekamp
factorization modulo a small prime that keeps the input squarefree,
quadratic Hensel lifting past the Mignotte coefficient bound, then
subset recombination with exact trial division.  Deterministic
throughout: prime choice, lift tree and subset scan have fixed orders.
"""

from __future__ import annotations

import dataclasses
import itertools
from math import gcd

from .polynomials import IntPoly, factor_coeff_bound, yun_decomposition

_PRIMES = (
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139,
    149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211,
)


@dataclasses.dataclass(frozen=True)
class FactoredPolynomial:
    """unit * content * prod(factor**multiplicity), factors primitive
    with positive leading coefficient, sorted by (degree, coefficients)."""

    unit: int
    content: int
    factors: tuple[tuple[IntPoly, int], ...]

    def expand(self) -> IntPoly:
        out = IntPoly((self.unit * self.content,))
        for poly, mult in self.factors:
            out = out * poly ** mult
        return out

    def irreducible_parts(self) -> list[IntPoly]:
        return [poly for poly, _ in self.factors]

    def is_squarefree(self) -> bool:
        return all(mult == 1 for _, mult in self.factors)


def factor_over_integers(f: IntPoly) -> FactoredPolynomial:
    """Full irreducible factorization of a nonzero integer polynomial."""
    assert not f.is_zero()
    unit = 1 if f.lc > 0 else -1
    work = IntPoly(tuple(unit * c for c in f.coeffs))
    content = work.content() if work.degree >= 0 else 1
    if work.degree == 0:
        return FactoredPolynomial(unit, content, ())
    prim = IntPoly(tuple(c // content for c in work.coeffs))
    found: list[tuple[IntPoly, int]] = []
    for part, mult in yun_decomposition(prim):
        for irr in _factor_squarefree(part):
            found.append((irr, mult))
    found.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    result = FactoredPolynomial(unit, content, tuple(found))
    assert result.expand() == f
    return result


def _factor_squarefree(g: IntPoly) -> list[IntPoly]:
    """Irreducible factors of a squarefree primitive g with positive lc."""
    if g.degree <= 1:
        return [g]
    lead = g.lc
    if lead != 1:
        # monicize via y = lead*x, factor, and map the factors back
        n = g.degree
        monic = IntPoly(
            tuple(c * lead ** (n - 1 - i) for i, c in enumerate(g.coeffs))
        )
        mapped = []
        for h in _factor_squarefree_monic(monic):
            back = IntPoly(
                tuple(c * lead ** i for i, c in enumerate(h.coeffs))
            ).primitive()
            mapped.append(back)
        prod = IntPoly((1,))
        for h in mapped:
            prod = prod * h
        assert prod == g
        return mapped
    return _factor_squarefree_monic(g)


def _factor_squarefree_monic(g: IntPoly) -> list[IntPoly]:
    coeffs = g.coeffs
    # choose the prime giving the fewest modular factors (ties: smaller p)
    best = None
    tried = 0
    for p in _PRIMES:
        fp = _gf_strip([c % p for c in coeffs])
        if len(fp) != len(coeffs):
            continue
        dfp = _gf_derivative(fp, p)
        if not dfp or len(_gf_gcd(fp, dfp, p)) > 1:
            continue
        count = _gf_factor_count(fp, p)
        if best is None or count < best[0]:
            best = (count, p, fp)
        tried += 1
        if tried >= 4 or (best and best[0] == 1):
            break
    assert best is not None, f"no usable prime for {g!r}"
    count, p, fp = best
    if count == 1:
        return [g]
    modular = _berlekamp(fp, p)
    modular.sort(key=lambda h: (len(h), h))
    bound = 2 * factor_coeff_bound(g) + 1
    exp = 1
    while p ** exp < bound:
        exp *= 2
    lifted = _hensel_lift_tree(p, g, modular, exp)
    return _recombine(g, lifted, p ** exp)


def _recombine(g: IntPoly, lifted: list[list[int]], modulus: int) -> list[IntPoly]:
    """Zassenhaus subset recombination by exact trial division."""
    out = []
    pool = list(lifted)
    size = 1
    while 2 * size <= len(pool):
        hit = True
        while hit:
            hit = False
            for subset in itertools.combinations(range(len(pool)), size):
                prod = [1]
                for i in subset:
                    prod = _gf_mul(prod, pool[i], modulus)
                cand = IntPoly(tuple(_symmetric(c, modulus) for c in prod))
                if g.coeffs[0] and cand.coeffs and cand.coeffs[0]:
                    if g.coeffs[0] % cand.coeffs[0]:
                        continue
                quot = g.try_exact_div(cand)
                if quot is not None:
                    out.append(cand)
                    g = quot
                    pool = [h for i, h in enumerate(pool) if i not in subset]
                    hit = True
                    break
        size += 1
    if g.degree >= 1:
        out.append(g)
    return out


# ---------------------------------------------------------------------------
# arithmetic modulo an integer, dense lowest-first int lists


def _gf_strip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a

def _gf_add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _gf_strip(out)

def _gf_sub(a, b, p):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _gf_strip(out)

def _gf_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _gf_strip(out)

def _gf_scale(a, c, p):
    return _gf_strip([(x * c) % p for x in a])

def _gf_divmod(a, b, p):
    """Division with remainder; b need not be monic but lc(b) must be a unit."""
    inv = pow(b[-1], -1, p)
    rem = list(a)
    db = len(b) - 1
    if len(rem) <= db:
        return [], _gf_strip(rem)
    quot = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        q = (rem[i] * inv) % p
        quot[i - db] = q
        if q:
            for j, c in enumerate(b):
                rem[i - db + j] = (rem[i - db + j] - q * c) % p
    return _gf_strip(quot), _gf_strip(rem[:db])

def _gf_rem(a, b, p):
    return _gf_divmod(a, b, p)[1]

def _gf_monic(a, p):
    assert a
    return _gf_scale(a, pow(a[-1], -1, p), p)

def _gf_gcd(a, b, p):
    while b:
        a, b = b, _gf_rem(a, b, p)
    return _gf_monic(a, p) if a else []

def _gf_ext_gcd(a, b, p):
    """(s, t, g) with s*a + t*b = g = monic gcd."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _gf_sub(s0, _gf_mul(q, s1, p), p)
        t0, t1 = t1, _gf_sub(t0, _gf_mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return _gf_scale(s0, inv, p), _gf_scale(t0, inv, p), _gf_monic(r0, p)

def _gf_derivative(a, p):
    return _gf_strip([(i * c) % p for i, c in enumerate(a)][1:])

def _gf_pow_mod(a, n, f, p):
    out = [1]
    base = _gf_rem(a, f, p)
    while n:
        if n & 1:
            out = _gf_rem(_gf_mul(out, base, p), f, p)
        base = _gf_rem(_gf_mul(base, base, p), f, p)
        n >>= 1
    return out


# ---------------------------------------------------------------------------
# Berlekamp factorization over GF(p)


def _frobenius_rows(f, p):
    """Rows of the matrix of v -> v(x**p) mod f in the power basis."""
    n = len(f) - 1
    xp = _gf_pow_mod([0, 1], p, f, p)
    rows = [[1] + [0] * (n - 1)]
    cur = [1]
    for _ in range(1, n):
        cur = _gf_rem(_gf_mul(cur, xp, p), f, p)
        rows.append(list(cur) + [0] * (n - len(cur)))
    return rows

def _left_nullspace(rows, p):
    """Basis of {v : v*M = 0 (mod p)} for a square matrix M."""
    n = len(rows)
    # v*M = 0 iff M^T v^T = 0, so row-reduce the transpose
    mt = [[rows[i][j] % p for i in range(n)] for j in range(n)]
    pivots = {}
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if mt[r][col]), None)
        if piv is None:
            continue
        mt[row], mt[piv] = mt[piv], mt[row]
        inv = pow(mt[row][col], -1, p)
        mt[row] = [(c * inv) % p for c in mt[row]]
        for r2 in range(n):
            if r2 != row and mt[r2][col]:
                f0 = mt[r2][col]
                mt[r2] = [(c - f0 * d) % p for c, d in zip(mt[r2], mt[row])]
        pivots[col] = row
        row += 1
    out = []
    for fc in range(n):
        if fc in pivots:
            continue
        v = [0] * n
        v[fc] = 1
        for col, r2 in pivots.items():
            v[col] = (-mt[r2][fc]) % p
        out.append(v)
    return out

def _gf_factor_count(f, p) -> int:
    rows = _frobenius_rows(f, p)
    n = len(rows)
    for i in range(n):
        rows[i][i] = (rows[i][i] - 1) % p
    return len(_left_nullspace(rows, p))

def _berlekamp(f, p):
    """All monic irreducible factors of monic squarefree f over GF(p)."""
    rows = _frobenius_rows(f, p)
    n = len(rows)
    for i in range(n):
        rows[i][i] = (rows[i][i] - 1) % p
    null = _left_nullspace(rows, p)
    r = len(null)
    factors = [_gf_monic(list(f), p)]
    if r == 1:
        return factors
    for v in null:
        vp = _gf_strip(list(v))
        if len(vp) <= 1:
            continue  # constants split nothing
        nxt = []
        for u in factors:
            if len(u) - 1 <= 1:
                nxt.append(u)
                continue
            # v is constant on each irreducible component of u; gcd with
            # v - c peels off the components where that constant is c
            rest = u
            pieces = []
            for c in range(p):
                if len(rest) - 1 < 1:
                    break
                g0 = _gf_gcd(rest, _gf_sub(vp, [c], p), p)
                if len(g0) - 1 >= 1:
                    pieces.append(g0)
                    q0, r0 = _gf_divmod(rest, g0, p)
                    assert not r0
                    rest = _gf_monic(q0, p) if len(q0) > 1 else q0
            if len(rest) - 1 >= 1:
                pieces.append(rest)
            nxt.extend(pieces if pieces else [u])
        factors = nxt
        if len(factors) == r:
            break
    assert len(factors) == r
    return factors


# ---------------------------------------------------------------------------
# Hensel lifting (monic, quadratic steps, recursive tree)


def _symmetric(c: int, m: int) -> int:
    c %= m
    return c - m if c > m // 2 else c

def _trunc(a, m):
    return _gf_strip([c % m for c in a])

def _hensel_step(m, f, g, h, s, t):
    """One quadratic step: from f = g*h, s*g + t*h = 1 (mod m) to mod m**2.

    f, g, h monic; returns (G, H, S, T) with the same shapes mod m**2.
    """
    mm = m * m
    fl = list(f.coeffs)
    e = _trunc(_gf_sub(fl, _gf_mul(g, h, mm), mm), mm)
    q, r = _gf_divmod(_gf_mul(s, e, mm), h, mm)
    gg = _gf_add(_gf_add(g, _gf_mul(t, e, mm), mm), _gf_mul(q, g, mm), mm)
    hh = _gf_add(h, r, mm)
    assert len(hh) == len(h) and hh[-1] == 1
    assert len(gg) == len(g) and gg[-1] == 1
    b = _trunc(_gf_sub(_gf_add(_gf_mul(s, gg, mm), _gf_mul(t, hh, mm), mm), [1], mm), mm)
    c, d = _gf_divmod(_gf_mul(s, b, mm), hh, mm)
    ss = _gf_sub(s, d, mm)
    tt = _gf_sub(_gf_sub(t, _gf_mul(t, b, mm), mm), _gf_mul(c, gg, mm), mm)
    return gg, hh, ss, tt

def _hensel_lift_tree(p, f: IntPoly, modular: list[list[int]], exp: int) -> list[list[int]]:
    """Lift a mod-p factorization of monic f to mod p**exp (exp a power of 2)."""
    if len(modular) == 1:
        return [_trunc(list(f.coeffs), p ** exp)]
    mid = len(modular) // 2
    a_half, b_half = modular[:mid], modular[mid:]
    g = [1]
    for u in a_half:
        g = _gf_mul(g, u, p)
    h = [1]
    for u in b_half:
        h = _gf_mul(h, u, p)
    s, t, one = _gf_ext_gcd(g, h, p)
    assert one == [1], "modular factors not coprime"
    m = p
    while m < p ** exp:
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m *= m
    ga = IntPoly(tuple(_symmetric(c, m) for c in g))
    hb = IntPoly(tuple(_symmetric(c, m) for c in h))
    return _hensel_lift_tree(p, ga, a_half, exp) + _hensel_lift_tree(p, hb, b_half, exp)

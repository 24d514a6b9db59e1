"""Dense integer-coefficient polynomials with exact arithmetic.

Coefficients are stored lowest degree first, so ``IntPoly((1, 0, 2))`` is
``1 + 2*x**2``.  All computation runs on Python ints and
``fractions.Fraction``; no code path here touches floating point.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction
from math import gcd, isqrt


@dataclasses.dataclass(frozen=True)
class IntPoly:
    """An integer polynomial.

    >>> x = IntPoly.x()
    >>> (x - 2) * (x + 2)
    IntPoly((-4, 0, 1))
    >>> (x**2 - 4)(5)
    21
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots) -> "IntPoly":
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial given degree -1."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other) -> "IntPoly":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly(tuple(c + (b[i] if i < len(b) else 0) for i, c in enumerate(a)))

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "IntPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "IntPoly":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "IntPoly":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPoly":
        assert n >= 0
        out = IntPoly((1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, t):
        """Evaluate by Horner; exact for int and Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def shift(self, a: int) -> "IntPoly":
        """Return p(x + a)."""
        out = IntPoly()
        xa = IntPoly((a, 1))
        for c in reversed(self.coeffs):
            out = out * xa + IntPoly((c,))
        return out

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> "IntPoly":
        """Primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lc < 0:
            g = -g
        return IntPoly(tuple(c // g for c in self.coeffs))

    def monic_divmod(self, other: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Quotient and remainder by a monic divisor, exactly over Z."""
        assert other.is_monic()
        rem = list(self.coeffs)
        n = other.degree
        if len(rem) <= n:
            return IntPoly(), self
        quot = [0] * (len(rem) - n)
        for i in range(len(rem) - 1, n - 1, -1):
            q = rem[i]
            quot[i - n] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[i - n + j] -= q * c
        return IntPoly(tuple(quot)), IntPoly(tuple(rem[:n]))

    def try_exact_div(self, other: "IntPoly") -> "IntPoly | None":
        """Exact quotient over Z, or None when other does not divide self."""
        if other.is_zero():
            return None
        rem = list(self.coeffs)
        n, lead = other.degree, other.lc
        if self.is_zero():
            return IntPoly()
        if len(rem) <= n - 1:
            return None
        quot = [0] * max(len(rem) - n, 0)
        for i in range(len(rem) - 1, n - 1, -1):
            if rem[i] % lead:
                return None
            q = rem[i] // lead
            quot[i - n] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[i - n + j] -= q * c
        if any(rem[:n]):
            return None
        return IntPoly(tuple(quot))

    def __repr__(self) -> str:
        return f"IntPoly({self.coeffs!r})"


def _coerce(v) -> IntPoly:
    if isinstance(v, IntPoly):
        return v
    if isinstance(v, int):
        return IntPoly((v,))
    raise TypeError(f"cannot coerce {type(v).__name__} to IntPoly")


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Greatest common divisor over Z, primitive with positive lc.

    Primitive pseudo-remainder sequence; coefficient growth is tamed by
    taking primitive parts at every step, which is plenty for the degrees
    seen here.
    """
    if f.is_zero():
        return g.primitive()
    if g.is_zero():
        return f.primitive()
    a, b = f.primitive(), g.primitive()
    if a.degree < b.degree:
        a, b = b, a
    cont = gcd(f.content(), g.content())
    while not b.is_zero():
        r = _scaled_rem(a, b)
        a, b = b, r.primitive()
    return IntPoly(tuple(c * cont for c in a.coeffs))


def _scaled_rem(f: IntPoly, g: IntPoly) -> IntPoly:
    """Remainder of f by g up to a nonzero integer multiple.

    Each step multiplies the running remainder by lc(g) before cancelling
    its top term, so no fractions appear.  Only useful where a constant
    factor is irrelevant (the primitive PRS above).
    """
    assert not g.is_zero()
    r = f
    dg, lead = g.degree, g.lc
    while not r.is_zero() and r.degree >= dg:
        shift = IntPoly((0,) * (r.degree - dg) + g.coeffs)
        r = lead * r - r.lc * shift
    return r


def squarefree_part(f: IntPoly) -> IntPoly:
    """Largest squarefree divisor (primitive, positive lc)."""
    assert not f.is_zero()
    if f.degree == 0:
        return IntPoly((1,))
    g = poly_gcd(f, f.derivative())
    if g.degree == 0:
        return f.primitive()
    q = f.primitive().try_exact_div(g)
    assert q is not None
    return q.primitive()


def yun_decomposition(f: IntPoly) -> list[tuple[IntPoly, int]]:
    """Squarefree decomposition f = content * prod p_i ** i (Yun).

    Returns the (p_i, i) with nonconstant p_i, primitive, positive lc.
    The sign/content is not returned; callers track it separately.
    """
    f = f.primitive()
    assert f.degree >= 1
    out = []
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f.try_exact_div(a)
    c = df.try_exact_div(a)
    i = 1
    while b.degree >= 1:
        d = c - b.derivative()
        p = poly_gcd(b, d)
        if p.degree >= 1:
            out.append((p, i))
        b2 = b.try_exact_div(p)
        c = d.try_exact_div(p)
        b = b2
        i += 1
    return out


def bareiss_det(rows, exact_div):
    """Fraction-free determinant over an integral domain.

    ``rows`` is a list of lists of ring elements supporting +, -, * and
    truthiness; ``exact_div(a, b)`` performs the (guaranteed exact)
    division used by the Bareiss recurrence.
    """
    m = [list(r) for r in rows]
    n = len(m)
    assert all(len(r) == n for r in m)
    if n == 0:
        return 1
    sign = 1
    prev = None
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return m[0][0] - m[0][0]  # ring zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                val = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                if prev is not None:
                    val = exact_div(val, prev)
                m[i][j] = val
            m[i][k] = m[k][k] - m[k][k]
        prev = m[k][k]
    det = m[n - 1][n - 1]
    if sign < 0:
        det = -det
    return det


def _div_int(a: int, b: int) -> int:
    q, r = divmod(a, b)
    assert r == 0
    return q


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Resultant of f and g over Z (Sylvester determinant, Bareiss)."""
    if f.is_zero() or g.is_zero():
        return 0
    m, n = f.degree, g.degree
    if m == 0:
        return f.lc ** n
    if n == 0:
        return g.lc ** m
    fh = list(reversed(f.coeffs))
    gh = list(reversed(g.coeffs))
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + fh + [0] * (size - i - len(fh)))
    for i in range(m):
        rows.append([0] * i + gh + [0] * (size - i - len(gh)))
    return bareiss_det(rows, _div_int)


def discriminant(f: IntPoly) -> int:
    """Discriminant of f; exact integer for integer f of degree >= 1."""
    n = f.degree
    assert n >= 1
    res = resultant(f, f.derivative())
    s = -1 if (n * (n - 1) // 2) % 2 else 1
    return _div_int(s * res, f.lc)


def newton_power_sums(f: IntPoly, count: int) -> list[int]:
    """Power sums p_0..p_{count-1} of the roots of a monic f (Newton).

    p_k equals the trace of the k-th power of the companion matrix of f.
    """
    assert f.is_monic()
    n = f.degree
    # elementary symmetric functions: e_i = (-1)**i * coeff of x**(n-i)
    e = [0] * (n + 1)
    e[0] = 1
    for i in range(1, n + 1):
        e[i] = (-1) ** i * f.coeffs[n - i]
    sums = [n]
    for k in range(1, count):
        acc = 0
        for i in range(1, min(k, n) + 1):
            term = e[i] * (sums[k - i] if k - i > 0 else 0)
            acc += -term if i % 2 == 0 else term
        if k <= n:
            acc += (k * e[k]) if k % 2 else -(k * e[k])
        sums.append(acc)
    return sums[:count]


def is_perfect_square(m: int) -> bool:
    return m >= 0 and isqrt(m) ** 2 == m


def cauchy_root_bound(f: IntPoly) -> int:
    """Integer B with every complex root of f strictly inside |z| < B."""
    assert f.degree >= 1
    lead = abs(f.lc)
    big = max(abs(c) for c in f.coeffs[:-1]) if f.degree >= 1 else 0
    return 1 + (big + lead - 1) // lead if big else 1


def factor_coeff_bound(f: IntPoly) -> int:
    """Bound on |coefficients| of any integer factor of f (Mignotte style)."""
    n = f.degree
    norm2 = isqrt(sum(c * c for c in f.coeffs)) + 1
    return (norm2 + abs(f.lc)) << n


# ---------------------------------------------------------------------------
# Sturm sequences and real root isolation


def _frac_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Remainder of a by b over Q, dense lowest-first lists."""
    r = list(a)
    db = len(b) - 1
    inv = 1 / b[-1]
    for i in range(len(r) - 1, db - 1, -1):
        q = r[i] * inv
        if q:
            for j in range(db + 1):
                r[i - db + j] -= q * b[j]
        r[i] = Fraction(0)
    while r and not r[-1]:
        r.pop()
    return r


def sturm_chain(f: IntPoly) -> list[list[Fraction]]:
    """Sturm chain of the squarefree part of f."""
    sf = squarefree_part(f)
    chain = [[Fraction(c) for c in sf.coeffs]]
    d = sf.derivative()
    if d.coeffs:
        chain.append([Fraction(c) for c in d.coeffs])
    while len(chain[-1]) > 1:
        r = _frac_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _sign_variations(chain: list[list[Fraction]], t: Fraction) -> int:
    signs = []
    for cs in chain:
        acc = Fraction(0)
        for c in reversed(cs):
            acc = acc * t + c
        if acc:
            signs.append(1 if acc > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


@dataclasses.dataclass(frozen=True)
class RootEnclosure:
    """An interval known to contain exactly one real root of ``poly``.

    Endpoints are dyadic rationals that are themselves never roots, except
    in the collapsed case lo == hi where the root is rational and exact.
    ``poly`` is squarefree, so the enclosed simple root flips the sign of
    ``poly`` across the interval, and refinement is plain sign bisection.
    """

    poly: IntPoly
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def is_exact(self) -> bool:
        return self.lo == self.hi

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def refine(self) -> "RootEnclosure":
        """Halve the interval (or collapse onto an exact rational root)."""
        if self.lo == self.hi:
            return self
        mid = self.midpoint()
        v = self.poly(mid)
        if v == 0:
            return RootEnclosure(self.poly, mid, mid)
        if (v > 0) == (self.poly(self.hi) > 0):
            return RootEnclosure(self.poly, self.lo, mid)
        return RootEnclosure(self.poly, mid, self.hi)

    def refined_to(self, width: Fraction) -> "RootEnclosure":
        enc = self
        while enc.lo != enc.hi and enc.width > width:
            enc = enc.refine()
        return enc


def isolate_real_roots(f: IntPoly) -> list[RootEnclosure]:
    """Disjoint enclosures of all real roots of f, in increasing order.

    Sturm bisection on the squarefree part.  Split points that happen to
    hit a root exactly are nudged, so interval endpoints are never roots.
    """
    assert not f.is_zero()
    sf = squarefree_part(f)
    if sf.degree < 1:
        return []
    chain = sturm_chain(sf)
    bound = Fraction(cauchy_root_bound(sf))
    out = []
    lo, hi = -bound, bound
    total = _sign_variations(chain, lo) - _sign_variations(chain, hi)
    stack = [(lo, hi, total)]
    while stack:
        a, b, cnt = stack.pop()
        if cnt == 0:
            continue
        if cnt == 1:
            out.append(RootEnclosure(sf, a, b))
            continue
        t = _nonroot_split(sf, a, b)
        va = _sign_variations(chain, a)
        vt = _sign_variations(chain, t)
        left = va - vt
        stack.append((a, t, left))
        stack.append((t, b, cnt - left))
    out.sort(key=lambda e: e.lo)
    return out


def _nonroot_split(f: IntPoly, a: Fraction, b: Fraction) -> Fraction:
    mid = (a + b) / 2
    if f(mid) != 0:
        return mid
    # the midpoint is a rational root; move the split point off it
    step = (b - a) / 4
    while True:
        t = mid + step
        if t < b and f(t) != 0:
            return t
        step /= 2

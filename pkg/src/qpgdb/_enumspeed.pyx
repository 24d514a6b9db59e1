# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Cython twin of _enum_py.enumerate_groups.

Same walk, same pruning, same output order; only the arithmetic moved
to C ints.  Any change here must be mirrored in _enum_py and covered by
the kernel-parity test.  Class counts are capped at _MAXD because the
state lives in fixed stack arrays; enumcore routes larger (never seen
in practice) shards to the pure kernel.
"""

KERNEL_NAME = "cython"

cdef enum:
    _MAXD = 15
    _N1 = _MAXD + 1
    _MAXPOS = (_MAXD * (_MAXD - 1)) // 2

MAX_CLASSES = _MAXD


cdef int _gcd(int a, int b) noexcept:
    cdef int t
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef struct _State:
    int d
    int k1
    int total
    int k[_N1]
    int B[_N1][_N1]
    int row_sum[_N1]
    int pj[_MAXPOS]
    int pl[_MAXPOS]
    int lams[_MAXPOS]


cdef bint _column_ok(_State* s, int j) noexcept:
    cdef int acc = 0
    cdef int r
    for r in range(s.d + 1):
        acc += s.k[r] * s.B[r][j]
    return acc == s.k1 * s.k[j]


cdef void _walk(_State* s, int pos, list out):
    cdef int j, l, step, v, m, diag, old, i
    if pos == s.total:
        diag = s.k1 - s.row_sum[s.d]
        if diag >= 0:
            s.B[s.d][s.d] = diag
            old = s.row_sum[s.d]
            s.row_sum[s.d] = s.k1
            if _column_ok(s, s.d):
                out.append(tuple([s.lams[i] for i in range(s.total)]))
            s.B[s.d][s.d] = 0
            s.row_sum[s.d] = old
        return
    j = s.pj[pos]
    l = s.pl[pos]
    step = s.k[j] / _gcd(s.k[j], s.k[l])
    v = step if pos == 0 else 0
    while True:
        m = (v * s.k[l]) / s.k[j]
        if s.row_sum[l] + v > s.k1 or s.row_sum[j] + m > s.k1:
            break
        s.B[l][j] = v
        s.B[j][l] = m
        s.row_sum[l] += v
        s.row_sum[j] += m
        s.lams[pos] = v
        if l == s.d:
            # group j complete: row j and column j are decided
            diag = s.k1 - s.row_sum[j]
            if diag >= 0:
                s.B[j][j] = diag
                old = s.row_sum[j]
                s.row_sum[j] = s.k1
                if _column_ok(s, j):
                    _walk(s, pos + 1, out)
                s.B[j][j] = 0
                s.row_sum[j] = old
        else:
            _walk(s, pos + 1, out)
        s.row_sum[l] -= v
        s.row_sum[j] -= m
        s.B[l][j] = 0
        s.B[j][l] = 0
        v += step
    s.lams[pos] = 0


def enumerate_groups(valencies):
    """Surviving flat lambda tuples for one valency shard, DFS order."""
    cdef _State s
    cdef int d = len(valencies)
    cdef int i, j, l, p
    if d > _MAXD:
        raise ValueError(f"kernel supports at most {_MAXD} classes, got {d}")
    if d == 1:
        return [()]
    if d < 1:
        return []

    s.d = d
    s.k[0] = 1
    for i in range(d):
        s.k[i + 1] = valencies[i]
    s.k1 = s.k[1]
    for i in range(d + 1):
        s.row_sum[i] = 0
        for j in range(d + 1):
            s.B[i][j] = 0
    s.B[0][1] = s.k1
    s.B[1][0] = 1
    s.row_sum[0] = s.k1
    s.row_sum[1] = 1
    p = 0
    for j in range(1, d):
        for l in range(j + 1, d + 1):
            s.pj[p] = j
            s.pl[p] = l
            s.lams[p] = 0
            p += 1
    s.total = p

    out = []
    _walk(&s, 0, out)
    return out

"""Pure-Python enumeration kernel.

Given a valency tuple (k_1, ..., k_d), walk every assignment of the
below-diagonal lambda groups whose completed B_1 has nonnegative integer
entries, rows summing to k_1, and valency-weighted column sums equal to
k_1 * k_j.  Entries are assigned column by column; the reciprocity
mirror (B_1)_{j,l} = lambda_{1jl} * k_l / k_j must come out integral,
which is enforced as a step size rather than a post-filter.

Once group j is placed, row j holds every off-diagonal entry it will
ever get (mirrors of group j fill its upper part, groups < j its lower
part), so its diagonal and its weighted column sum are decided right
there instead of at the leaves.

The Cython twin in _enumspeed.pyx implements the same walk and must
stay order-identical; enumcore picks whichever is importable.
"""

from __future__ import annotations

from math import gcd

KERNEL_NAME = "python"


def enumerate_groups(valencies: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Surviving flat lambda tuples for one valency shard, DFS order.

    The flat tuple concatenates the groups: lambda_{1jl} for j = 1..d-1,
    l = j+1..d, group-major.  Survivors are exactly the assignments with
    lambda_{112} > 0 whose B_1 completion stays nonnegative and passes
    the weighted column identity in every column.
    """
    d = len(valencies)
    k = (1,) + tuple(valencies)
    k1 = k[1]
    n1 = d + 1

    positions = [(j, l) for j in range(1, d) for l in range(j + 1, d + 1)]
    total = len(positions)
    # B[r][c] = lambda_{1,c,r}; row 0 and column 0 are fixed.
    B = [[0] * n1 for _ in range(n1)]
    B[0][1] = k1
    B[1][0] = 1
    row_sum = [0] * n1
    row_sum[0] = k1
    row_sum[1] = 1
    lams = [0] * total
    out: list[tuple[int, ...]] = []

    def column_ok(j: int) -> bool:
        acc = 0
        for r in range(n1):
            acc += k[r] * B[r][j]
        return acc == k1 * k[j]

    def close_row(r: int) -> bool:
        diag = k1 - row_sum[r]
        if diag < 0:
            return False
        B[r][r] = diag
        row_sum[r] = k1
        return True

    def open_row(r: int, old_sum: int) -> None:
        B[r][r] = 0
        row_sum[r] = old_sum

    def walk(pos: int) -> None:
        if pos == total:
            old = row_sum[d]
            if close_row(d):
                if column_ok(d):
                    out.append(tuple(lams))
                open_row(d, old)
            return
        j, l = positions[pos]
        step = k[j] // gcd(k[j], k[l])
        v = step if pos == 0 else 0
        while True:
            m = v * k[l] // k[j]
            if row_sum[l] + v > k1 or row_sum[j] + m > k1:
                break
            B[l][j] = v
            B[j][l] = m
            row_sum[l] += v
            row_sum[j] += m
            lams[pos] = v
            if l == d:
                # group j complete: row j and column j are decided
                old = row_sum[j]
                if close_row(j) and column_ok(j):
                    walk(pos + 1)
                open_row(j, old)
            else:
                walk(pos + 1)
            row_sum[l] -= v
            row_sum[j] -= m
            B[l][j] = 0
            B[j][l] = 0
            v += step
        lams[pos] = 0

    if d >= 2:
        walk(0)
    elif d == 1:
        out.append(())
    return out

"""Parameter arrays: text grammar, B_1 construction, reconstruction.

An array ``[[k_1,...,k_d],[g_1;...;g_{d-1}]]`` packs the valencies and
the below-diagonal entries of the first intersection matrix: group j
holds lambda_{1,j,j+1} .. lambda_{1,j,d}.  Everything else about the
scheme candidate is forced from these d + d(d-1)/2 integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .matrices import IntMatrix


class ArrayFormatError(ValueError):
    """Raised by parse_array; carries the character offset of the fault."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class ArrayBuildError(ValueError):
    pass


class ReciprocityNonIntegral(ArrayBuildError):
    """k_j does not divide lambda_{1jl} * k_l."""

    def __init__(self, j: int, l: int, lam: int, kj: int, kl: int):
        super().__init__(
            f"entry ({j},{l}): k_{j}={kj} does not divide "
            f"lambda_{{1,{j},{l}}}*k_{l} = {lam}*{kl}"
        )
        self.indices = (j, l)


class NegativeDiagonal(ArrayBuildError):
    """Row-sum completion of a diagonal entry went negative."""

    def __init__(self, row: int, value: int):
        super().__init__(f"diagonal entry ({row},{row}) would be {value}")
        self.row = row
        self.value = value


@dataclass(frozen=True)
class ParameterArray:
    valencies: tuple[int, ...]
    groups: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d = len(self.valencies)
        if d < 1:
            raise ValueError("need at least one class")
        if any(k < 1 for k in self.valencies):
            raise ValueError("valencies must be positive")
        if len(self.groups) != d - 1:
            raise ValueError(f"need {d - 1} lambda groups, got {len(self.groups)}")
        for j, g in enumerate(self.groups, start=1):
            if len(g) != d - j:
                raise ValueError(f"group {j} must have {d - j} entries, got {len(g)}")
            if any(v < 0 for v in g):
                raise ValueError(f"group {j} has a negative entry")

    @property
    def d(self) -> int:
        return len(self.valencies)

    @property
    def order(self) -> int:
        return 1 + sum(self.valencies)

    def lam(self, j: int, l: int) -> int:
        """lambda_{1jl} for 1 <= j < l <= d."""
        assert 1 <= j < l <= self.d
        return self.groups[j - 1][l - j - 1]

    def in_search_normal_form(self) -> bool:
        ks = self.valencies
        sorted_tail = all(ks[i] <= ks[i + 1] for i in range(2, self.d - 1))
        return (self.d < 2 or self.lam(1, 2) > 0) and sorted_tail


def parse_array(text: str) -> ParameterArray:
    """Parse the whitespace-insensitive array grammar."""
    scan = _Scanner(text)
    scan.expect("[")
    scan.expect("[")
    valencies = scan.int_list()
    scan.expect("]")
    scan.expect(",")
    scan.expect("[")
    groups: list[tuple[tuple[int, int], ...]] = []
    if scan.peek() != "]":
        groups.append(scan.int_list())
        while scan.peek() == ";":
            scan.expect(";")
            groups.append(scan.int_list())
    scan.expect("]")
    scan.expect("]")
    scan.expect_end()

    d = len(valencies)
    for value, pos in valencies:
        if value < 1:
            raise ArrayFormatError("valencies must be positive", pos)
    if len(groups) != d - 1:
        raise ArrayFormatError(
            f"expected {d - 1} lambda groups for d={d}, got {len(groups)}", scan.pos
        )
    for j, g in enumerate(groups, start=1):
        if len(g) != d - j:
            raise ArrayFormatError(
                f"group {j} must have {d - j} entries, got {len(g)}", g[0][1]
            )
    return ParameterArray(
        tuple(v for v, _ in valencies),
        tuple(tuple(v for v, _ in g) for g in groups),
    )


def format_array(a: ParameterArray) -> str:
    ks = ",".join(str(k) for k in a.valencies)
    gs = ";".join(",".join(str(v) for v in g) for g in a.groups)
    return f"[[{ks}],[{gs}]]"


class _Scanner:
    """Cursor over the original text; offsets in errors refer to it."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        self._skip_ws()
        if self.pos >= len(self.text):
            raise ArrayFormatError(f"expected {ch!r}, found end of input", self.pos)
        if self.text[self.pos] != ch:
            raise ArrayFormatError(
                f"expected {ch!r}, found {self.text[self.pos]!r}", self.pos
            )
        self.pos += 1

    def expect_end(self):
        self._skip_ws()
        if self.pos < len(self.text):
            raise ArrayFormatError(
                f"trailing input {self.text[self.pos]!r}", self.pos
            )

    def integer(self) -> tuple[int, int]:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            found = self.text[start] if start < len(self.text) else "end of input"
            raise ArrayFormatError(
                f"expected a nonnegative integer, found {found!r}", start
            )
        return int(self.text[start : self.pos]), start

    def int_list(self) -> tuple[tuple[int, int], ...]:
        items = [self.integer()]
        while self.peek() == ",":
            self.expect(",")
            items.append(self.integer())
        return tuple(items)


def _b1_rows(a: ParameterArray) -> list[list[int]]:
    d, k = a.d, a.valencies
    m = [[0] * (d + 1) for _ in range(d + 1)]
    m[0][1] = k[0]
    m[1][0] = 1
    for j in range(1, d + 1):
        for l in range(j + 1, d + 1):
            lam = a.lam(j, l)
            m[l][j] = lam
            num = lam * k[l - 1]
            if num % k[j - 1]:
                raise ReciprocityNonIntegral(j, l, lam, k[j - 1], k[l - 1])
            m[j][l] = num // k[j - 1]
    for r in range(1, d + 1):
        rest = sum(m[r][c] for c in range(d + 1) if c != r)
        if rest > k[0]:
            raise NegativeDiagonal(r, k[0] - rest)
        m[r][r] = k[0] - rest
    return m


def build_B1(a: ParameterArray) -> IntMatrix:
    """First intersection matrix, entry (r, c) = lambda_{1,c,r}.

    Row 0 is k_1 e_1 and column 0 the indicator of row 1; the array
    supplies the below-diagonal block, reciprocity the block above it,
    and row sums (= k_1) the diagonal.
    """
    return IntMatrix(tuple(tuple(row) for row in _b1_rows(a)))


def array_from_b1(valencies: tuple[int, ...], b1: IntMatrix) -> ParameterArray:
    """Read the parameter array back off a B_1-shaped matrix."""
    d = len(valencies)
    groups = tuple(
        tuple(b1.rows[l][j] for l in range(j + 1, d + 1)) for j in range(1, d)
    )
    return ParameterArray(valencies, groups)


def canonicalize(a: ParameterArray, basis=None) -> tuple[ParameterArray, str]:
    """Least representative of the relabeling orbit, plus its key.

    Classes 2..d may be relabeled freely (class 1 generates and stays
    put); each relabeling permutes B_1 by conjugation and the array is
    read back off the permuted matrix.  Orbit elements are compared as
    (valencies, groups) integer tuples, so the winner does not depend
    on digit widths.  A SitaBasis may be passed to reuse its B_1.
    """
    out, text, _ = canonical_presentation(a, basis)
    return out, text


def canonical_presentation(
    a: ParameterArray, basis=None
) -> tuple[ParameterArray, str, IntMatrix]:
    """canonicalize, but also the B_1 of the canonical labeling.

    The matrix is read off the permuted original instead of being rebuilt
    from the winner, which spares the reciprocity divisions.
    """
    d = a.d
    n1 = d + 1
    rows = basis.matrices[1].rows if basis is not None else _b1_rows(a)
    best: tuple | None = None
    best_of: tuple[int, ...] = ()
    for tau in permutations(range(2, d + 1)):
        # tau maps new index -> old index; indices 0 and 1 are fixed
        old_of = (0, 1) + tau
        ks = tuple(a.valencies[old_of[t] - 1] for t in range(1, d + 1))
        groups = tuple(
            tuple(rows[old_of[l]][old_of[j]] for l in range(j + 1, d + 1))
            for j in range(1, d)
        )
        cand = (ks, groups)
        if best is None or cand < best:
            best, best_of = cand, old_of
    assert best is not None
    out = ParameterArray(best[0], best[1])
    b1 = IntMatrix(
        tuple(
            tuple(rows[best_of[r]][best_of[c]] for c in range(n1))
            for r in range(n1)
        )
    )
    return out, format_array(out), b1


# ---------------------------------------------------------------------------
# full parameter sets and reconstruction of every intersection matrix


def lambda_triples(d: int):
    """Index triples (i, j, l) with 1 <= i <= j < l <= d, lexicographic."""
    for i in range(1, d):
        for j in range(i, d):
            for l in range(j + 1, d + 1):
                yield (i, j, l)


@dataclass(frozen=True)
class FullParameterSet:
    """Valencies plus lambda_{ijl} for 1 <= i <= j < l <= d, in the
    order of lambda_triples."""

    valencies: tuple[int, ...]
    lambdas: tuple[int, ...]

    def __post_init__(self):
        d = len(self.valencies)
        want = sum(s * (s + 1) // 2 for s in range(1, d))
        if len(self.lambdas) != want:
            raise ValueError(f"need {want} lambda entries for d={d}")
        if any(k < 1 for k in self.valencies):
            raise ValueError("valencies must be positive")
        if any(v < 0 for v in self.lambdas):
            raise ValueError("lambda entries must be nonnegative")

    @property
    def d(self) -> int:
        return len(self.valencies)

    @classmethod
    def from_mapping(cls, valencies, mapping) -> "FullParameterSet":
        d = len(valencies)
        return cls(
            tuple(valencies), tuple(mapping[t] for t in lambda_triples(d))
        )


class ReconstructionError(ValueError):
    pass


class Inconsistent(ReconstructionError):
    pass


class Underdetermined(ReconstructionError):
    """Fixpoint stalled; carries the still-unknown (i, row, col) cells."""

    def __init__(self, positions):
        self.positions = tuple(sorted(positions))
        super().__init__(f"{len(self.positions)} entries undetermined")


def reconstruct_all(fp: FullParameterSet) -> list[IntMatrix]:
    """Recover B_0..B_d from the below-diagonal lambda data.

    Propagates four rule families to a fixpoint: boundary row/column,
    symmetry lambda_{ijl} = lambda_{jil}, reciprocity lambda_{ijl} k_l =
    lambda_{ilj} k_j, and completion of rows to sum k_i.  Entry (r, c)
    of B_i is lambda_{i,c,r} throughout.
    """
    d = fp.d
    k = fp.valencies
    n1 = d + 1
    val: list[list[list[int | None]]] = [
        [[None] * n1 for _ in range(n1)] for _ in range(d + 1)
    ]

    def assign(i: int, r: int, c: int, v: int):
        if v < 0:
            raise Inconsistent(f"B_{i}[{r},{c}] forced to {v}")
        cur = val[i][r][c]
        if cur is None:
            val[i][r][c] = v
            return True
        if cur != v:
            raise Inconsistent(f"B_{i}[{r},{c}] forced to both {cur} and {v}")
        return False

    for r in range(n1):
        for c in range(n1):
            assign(0, r, c, int(r == c))
    for i in range(1, d + 1):
        for c in range(n1):
            assign(i, 0, c, k[i - 1] if c == i else 0)
        for r in range(1, n1):
            assign(i, r, 0, int(r == i))
    given = dict(zip(lambda_triples(d), fp.lambdas))
    for (i, j, l), v in given.items():
        assign(i, l, j, v)

    changed = True
    while changed:
        changed = False
        for i in range(1, d + 1):
            for j in range(1, d + 1):
                for l in range(n1):
                    a, b = val[i][l][j], val[j][l][i]
                    if a is not None and b is None:
                        changed |= assign(j, l, i, a)
                    elif b is not None and a is None:
                        changed |= assign(i, l, j, b)
                    elif a is not None and b is not None and a != b:
                        raise Inconsistent(
                            f"symmetry: B_{i}[{l},{j}]={a} vs B_{j}[{l},{i}]={b}"
                        )
        for i in range(1, d + 1):
            for j in range(1, d + 1):
                for l in range(1, d + 1):
                    if j == l:
                        continue
                    a, b = val[i][l][j], val[i][j][l]
                    # lambda_{ijl} k_l = lambda_{ilj} k_j
                    if a is not None and b is None:
                        num = a * k[l - 1]
                        if num % k[j - 1]:
                            raise Inconsistent(
                                f"reciprocity: k_{j} does not divide "
                                f"lambda_{{{i},{j},{l}}}*k_{l} = {num}"
                            )
                        changed |= assign(i, j, l, num // k[j - 1])
                    elif a is not None and b is not None:
                        if a * k[l - 1] != b * k[j - 1]:
                            raise Inconsistent(
                                f"reciprocity fails at ({i},{j},{l})"
                            )
        for i in range(1, d + 1):
            for r in range(n1):
                row = val[i][r]
                missing = [c for c in range(n1) if row[c] is None]
                known = sum(v for v in row if v is not None)
                if not missing:
                    if known != k[i - 1]:
                        raise Inconsistent(
                            f"row {r} of B_{i} sums to {known}, not k_{i}"
                        )
                elif len(missing) == 1:
                    changed |= assign(i, r, missing[0], k[i - 1] - known)

    stalled = [
        (i, r, c)
        for i in range(d + 1)
        for r in range(n1)
        for c in range(n1)
        if val[i][r][c] is None
    ]
    if stalled:
        raise Underdetermined(stalled)
    return [
        IntMatrix(tuple(tuple(row) for row in val[i])) for i in range(d + 1)
    ]

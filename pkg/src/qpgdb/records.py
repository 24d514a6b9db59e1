"""Feasibility verdicts and their line-oriented record format.

``run_all`` drives the whole pipeline for one parameter array: build
the basis, validate it, run the sieve over every multiplicity profile,
and compute the spectral flags for the accepted profile.  The outcome
is a flat, JSON-serializable ``FeasibilityRecord``; one record per
line is the database format consumed by the report emitter.

Verdict vocabulary: status is INVALID (the array does not define a
SITA basis at all), INFEASIBLE (valid, but a necessary condition for
realizability fails; ``failure_reason`` names the first stage at which
every candidate died), or FEASIBLE (valid and no implemented check
fails).  Stage flags that were never reached stay null, so a record
also documents how far the sieve got.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from .arrays import (
    ArrayBuildError,
    NegativeDiagonal,
    ParameterArray,
    canonicalize,
    format_array,
    parse_array,
)
from .factorint import factor_over_integers
from .polynomials import discriminant
from .sieve import (
    frame_check,
    handshake_check,
    multiplicity_candidates,
    trace_check,
)
from .sita import derive_basis, derive_sita, distance_partition, is_p_polynomial
from .spectra import (
    ORTHOGONALITY_METHOD,
    copolynomial_in,
    krein_and_absolute_bound,
    noncyclotomic,
    polynomial_in,
    spectral_data,
)

SCHEMA_VERSION = 1

# sieve stages evaluated per multiplicity profile, in order
_STAGES = ("frame", "disc_square", "trace", "orthogonality")


@dataclass(frozen=True)
class FeasibilityRecord:
    """One array's verdict, in serialization normal form.

    Every field is an int, str, bool, None, or (nested) tuple thereof,
    so records compare, hash, and round-trip through JSON exactly.
    ``profile`` lists the accepted multiplicities aligned with the
    nontrivial factors of ``factors`` in order (the linear factor
    x - k_1 always carries multiplicity 1 and is excluded).
    """

    schema_version: int
    rank: int
    order: int
    array: str
    valencies: tuple[int, ...]
    status: str
    failure_reason: str | None
    handshake: str | None
    multiplicities: str | None
    frame: str | None
    disc_square: str | None
    trace: str | None
    trace_walks: str | None
    orthogonality: str | None
    krein: str | None
    absolute_bound: str | None
    noncyclotomic: bool | None
    minimal_poly: tuple[int, ...] | None
    factors: tuple[tuple[tuple[int, ...], int], ...] | None
    profile: tuple[int, ...] | None
    frame_number: str | None
    polynomial_in: tuple[int, ...] | None
    copolynomial_in_E: tuple[int, ...] | None
    copolynomial_in_idempotent: bool | None
    copolynomial_witness: tuple[int, ...] | None
    distance_partition: tuple[tuple[int, ...], ...] | None
    p_polynomial: bool | None
    orthogonality_method: str | None

    @property
    def feasible(self) -> bool:
        return self.status == "FEASIBLE"

    @property
    def frame_number_exact(self) -> Fraction | None:
        return None if self.frame_number is None else Fraction(self.frame_number)

    def flag_items(self) -> tuple[tuple[str, str | None], ...]:
        """The per-check flags in schema order."""
        return (
            ("handshake", self.handshake),
            ("multiplicities", self.multiplicities),
            ("frame", self.frame),
            ("disc_square", self.disc_square),
            ("trace", self.trace),
            ("trace_walks", self.trace_walks),
            ("orthogonality", self.orthogonality),
            ("krein", self.krein),
            ("absolute_bound", self.absolute_bound),
        )

    def to_json_line(self) -> str:
        obj = {
            "schema_version": self.schema_version,
            "rank": self.rank,
            "order": self.order,
            "array": self.array,
            "valencies": list(self.valencies),
            "status": self.status,
            "failure_reason": self.failure_reason,
            "flags": dict(self.flag_items()),
            "noncyclotomic": self.noncyclotomic,
            "minimal_poly": _ls(self.minimal_poly),
            "factors": None
            if self.factors is None
            else [[list(c), deg] for c, deg in self.factors],
            "profile": _ls(self.profile),
            "frame_number": self.frame_number,
            "polynomial_in": _ls(self.polynomial_in),
            "copolynomial_in_E": _ls(self.copolynomial_in_E),
            "copolynomial_in_idempotent": self.copolynomial_in_idempotent,
            "copolynomial_witness": _ls(self.copolynomial_witness),
            "distance_partition": None
            if self.distance_partition is None
            else [list(block) for block in self.distance_partition],
            "p_polynomial": self.p_polynomial,
            "orthogonality_method": self.orthogonality_method,
        }
        return json.dumps(obj, separators=(",", ":"))

    @classmethod
    def from_json_line(cls, line: str) -> "FeasibilityRecord":
        obj = json.loads(line)
        if obj.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(
                f"unsupported schema_version {obj.get('schema_version')!r}"
            )
        flags = obj["flags"]
        return cls(
            schema_version=obj["schema_version"],
            rank=obj["rank"],
            order=obj["order"],
            array=obj["array"],
            valencies=tuple(obj["valencies"]),
            status=obj["status"],
            failure_reason=obj["failure_reason"],
            handshake=flags["handshake"],
            multiplicities=flags["multiplicities"],
            frame=flags["frame"],
            disc_square=flags["disc_square"],
            trace=flags["trace"],
            trace_walks=flags["trace_walks"],
            orthogonality=flags["orthogonality"],
            krein=flags["krein"],
            absolute_bound=flags["absolute_bound"],
            noncyclotomic=obj["noncyclotomic"],
            minimal_poly=_tp(obj["minimal_poly"]),
            factors=None
            if obj["factors"] is None
            else tuple((tuple(c), deg) for c, deg in obj["factors"]),
            profile=_tp(obj["profile"]),
            frame_number=obj["frame_number"],
            polynomial_in=_tp(obj["polynomial_in"]),
            copolynomial_in_E=_tp(obj["copolynomial_in_E"]),
            copolynomial_in_idempotent=obj["copolynomial_in_idempotent"],
            copolynomial_witness=_tp(obj["copolynomial_witness"]),
            distance_partition=None
            if obj["distance_partition"] is None
            else tuple(tuple(block) for block in obj["distance_partition"]),
            p_polynomial=obj["p_polynomial"],
            orthogonality_method=obj["orthogonality_method"],
        )


def _ls(t):
    return None if t is None else list(t)


def _tp(t):
    return None if t is None else tuple(t)


_NONE_FIELDS = dict(
    handshake=None,
    multiplicities=None,
    frame=None,
    disc_square=None,
    trace=None,
    trace_walks=None,
    orthogonality=None,
    krein=None,
    absolute_bound=None,
    profile=None,
    frame_number=None,
    copolynomial_in_E=None,
    copolynomial_in_idempotent=None,
    copolynomial_witness=None,
    orthogonality_method=None,
)


def _invalid(a: ParameterArray, text: str, reason: str, detail: str):
    return FeasibilityRecord(
        schema_version=SCHEMA_VERSION,
        rank=a.d + 1,
        order=a.order,
        array=text,
        valencies=a.valencies,
        status="INVALID",
        failure_reason=f"{reason}: {detail}" if detail else reason,
        noncyclotomic=None,
        minimal_poly=None,
        factors=None,
        polynomial_in=None,
        distance_partition=None,
        p_polynomial=None,
        **_NONE_FIELDS,
    )


def run_all(a: ParameterArray) -> FeasibilityRecord:
    """Full verdict for one array; every field refers to its canonical form."""
    try:
        canon, text = canonicalize(a)
    except ArrayBuildError as e:
        reason = (
            "NegativeBasis" if isinstance(e, NegativeDiagonal) else "NonIntegralBasis"
        )
        return _invalid(a, format_array(a), reason, str(e))
    return _run_canonical(canon, text)[0]


def _run_canonical(
    canon: ParameterArray, text: str, b1=None, keep_invalid: bool = True
) -> tuple[FeasibilityRecord | None, bool]:
    """Verdict for an already canonical array, plus whether an integral
    multiplicity assignment exists at all.

    The extra flag is the database membership test used by the search:
    valid arrays stay in the output as long as the multiplicity equations
    have some solution, even when a later (or earlier) check already
    rules the scheme out.  With keep_invalid=False an invalid array comes
    back as (None, False) and the failure diagnostics are never built.
    """
    if keep_invalid:
        out = derive_sita(canon, b1)
        if not out.ok:
            return _invalid(canon, text, out.reason.value, out.detail), False
        b = out.basis
    else:
        b = derive_basis(canon, b1)
        if b is None:
            return None, False
    d = b.d
    mu = b.min_poly
    fp = factor_over_integers(mu)
    base = dict(
        schema_version=SCHEMA_VERSION,
        rank=d + 1,
        order=canon.order,
        array=text,
        valencies=canon.valencies,
        noncyclotomic=noncyclotomic(fp),
        minimal_poly=mu.coeffs,
        factors=tuple((g.coeffs, g.degree) for g, m in fp.factors for _ in range(m)),
        polynomial_in=tuple(j for j in range(1, d + 1) if polynomial_in(b, j)),
        distance_partition=distance_partition(b).blocks,
        p_polynomial=is_p_polynomial(b),
    )
    profiles = multiplicity_candidates(fp, canon.valencies)

    if not handshake_check(b):
        return (
            FeasibilityRecord(
                status="INFEASIBLE",
                failure_reason="handshake",
                **base,
                **{**_NONE_FIELDS, "handshake": "fail"},
            ),
            bool(profiles),
        )

    if not profiles:
        return (
            FeasibilityRecord(
                status="INFEASIBLE",
                failure_reason="multiplicities",
                **base,
                **{**_NONE_FIELDS, "handshake": "pass", "multiplicities": "fail"},
            ),
            False,
        )

    disc = discriminant(mu)
    best = 0  # deepest stage any candidate passed
    accepted = acc_spectral = acc_trace = None
    for p in profiles:
        passed = 0
        _, f_int, f_sq = frame_check(p, disc)
        if f_int:
            passed = 1
            if f_sq:
                passed = 2
                tr = trace_check(p, b.matrices[1])
                if tr.integral:
                    passed = 3
                    s = spectral_data(b, p)
                    if s.orthogonality == "pass":
                        passed = 4
                        accepted, acc_spectral, acc_trace = p, s, tr
        best = max(best, passed)
        if accepted is not None:
            break

    if accepted is None:
        stage_flags = {
            name: ("pass" if i < best else "fail" if i == best else None)
            for i, name in enumerate(_STAGES)
        }
        return (
            FeasibilityRecord(
                status="INFEASIBLE",
                failure_reason=_STAGES[best],
                **base,
                **{
                    **_NONE_FIELDS,
                    "handshake": "pass",
                    "multiplicities": "pass",
                    **stage_flags,
                    "orthogonality_method": ORTHOGONALITY_METHOD
                    if stage_flags["orthogonality"]
                    else None,
                },
            ),
            True,
        )

    krein, bound_ok = krein_and_absolute_bound(acc_spectral)
    cop_e = tuple(t for t in range(1, d + 1) if copolynomial_in(acc_spectral, {t}))
    witness = None
    for sub in sorted(
        itertools.chain.from_iterable(
            itertools.combinations(range(1, d + 1), r) for r in range(1, d + 1)
        )
    ):
        if copolynomial_in(acc_spectral, sub):
            witness = sub
            break

    if krein == "fail":
        status, reason = "INFEASIBLE", "krein"
    elif not bound_ok:
        status, reason = "INFEASIBLE", "absolute_bound"
    else:
        # an indeterminate Krein parameter is not a proof of failure
        status, reason = "FEASIBLE", None
    return (
        FeasibilityRecord(
            status=status,
            failure_reason=reason,
            handshake="pass",
            multiplicities="pass",
            frame="pass",
            disc_square="pass",
            trace="pass",
            trace_walks="pass" if acc_trace.walks_match else "fail",
            orthogonality="pass",
            krein=krein,
            absolute_bound="pass" if bound_ok else "fail",
            profile=accepted.multiplicities,
            frame_number=str(accepted.frame_number),
            copolynomial_in_E=cop_e,
            copolynomial_in_idempotent=witness is not None,
            copolynomial_witness=witness,
            orthogonality_method=ORTHOGONALITY_METHOD,
            **base,
        ),
        True,
    )


def run_all_text(text: str) -> FeasibilityRecord:
    """Parse and verify; raises ArrayFormatError on malformed input."""
    return run_all(parse_array(text))


def write_records(stream, sink) -> int:
    """Write records line by line to an open text sink; returns the count.

    The stream may mix bare records with per-shard batches (lists or
    tuples of records); the sink is flushed after every stream item, so
    batch granularity is flush granularity.
    """
    count = 0
    for item in stream:
        batch = item if isinstance(item, (list, tuple)) else (item,)
        for rec in batch:
            sink.write(rec.to_json_line() + "\n")
            count += 1
        sink.flush()
    return count


def read_records(path):
    """Yield the records in a line-delimited database file."""
    with open(path, encoding="ascii") as fh:
        for line in fh:
            if line.strip():
                yield FeasibilityRecord.from_json_line(line)


__all__ = [
    "SCHEMA_VERSION",
    "FeasibilityRecord",
    "run_all",
    "run_all_text",
    "write_records",
    "read_records",
]

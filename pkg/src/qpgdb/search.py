"""Deterministic, resumable, parallel enumeration of parameter arrays.

The search space is cut into shards, one per valency tuple
(k_1, ..., k_d) with 1 + sum(k_i) = n.  Two normal-form assumptions cut
the space without losing equivalence classes: lambda_{112} > 0 and
k_3 <= ... <= k_d (k_2 stays free; canonical-key dedupe absorbs the
leftover symmetry, including duplicates that straddle shards).

Workers share nothing: each maps a shard through the enumeration
kernel, canonicalizes, dedupes within the shard, and runs the full
verdict pipeline on the survivors.  A single merger commits batches in
shard order no matter which worker finishes first, so the output file
is byte-identical for any worker count.  Resume state (next shard +
committed byte offset) lives in a sidecar JSON next to the sink; on
resume the sink is truncated back to the committed prefix, which makes
a crash mid-shard harmless.
"""

from __future__ import annotations

import json
import multiprocessing
import os
import sys
import time
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

from .arrays import ParameterArray, canonical_presentation
from .enumcore import enumerate_groups
from .records import FeasibilityRecord, _run_canonical

ENV_JOBS = "QPG_JOBS"
STATE_SUFFIX = ".state.json"
_STATE_SCHEMA = 1
_PROGRESS_SECONDS = 2.0


def default_jobs() -> int:
    """Worker count from QPG_JOBS, else 1."""
    raw = os.environ.get(ENV_JOBS, "").strip()
    if not raw:
        return 1
    try:
        jobs = int(raw)
    except ValueError:
        jobs = 0
    if jobs < 1:
        raise ValueError(f"{ENV_JOBS} must be a positive integer, got {raw!r}")
    return jobs


@dataclass(frozen=True)
class SearchConfig:
    rank: int
    min_order: int
    max_order: int
    max_valency: int
    jobs: int = 1

    def __post_init__(self):
        if self.rank < 3:
            raise ValueError("rank must be at least 3")
        if self.min_order < self.rank:
            raise ValueError("min_order must be at least the rank")
        if self.max_valency < 1:
            raise ValueError("max_valency must be positive")
        if self.jobs < 1:
            raise ValueError("jobs must be positive")
        # max_order < min_order is allowed and yields an empty search

    def key(self) -> dict:
        """The fields a resumed run must agree on (jobs excluded)."""
        return {
            "rank": self.rank,
            "min_order": self.min_order,
            "max_order": self.max_order,
            "max_valency": self.max_valency,
        }


@dataclass(frozen=True)
class SearchShard:
    valencies: tuple[int, ...]

    @property
    def order(self) -> int:
        return 1 + sum(self.valencies)


def _sorted_tails(m: int, parts: int, lo: int) -> Iterator[tuple[int, ...]]:
    """Nondecreasing `parts`-tuples with entries >= lo summing to m."""
    if parts == 0:
        if m == 0:
            yield ()
        return
    v = lo
    while v * parts <= m:
        for rest in _sorted_tails(m - v, parts - 1, v):
            yield (v,) + rest
        v += 1


def enumerate_valencies(c: SearchConfig) -> Iterator[SearchShard]:
    """Shards in deterministic order: n, then k_1, then k_2, then tail.

    Emits every tuple with k_1 <= max_valency, all k_i >= 1,
    k_3 <= ... <= k_d, and 1 + sum(k_i) = n inside the order range.
    """
    d = c.rank - 1
    for n in range(c.min_order, c.max_order + 1):
        s = n - 1
        for k1 in range(1, min(c.max_valency, s - (d - 1)) + 1):
            for k2 in range(1, s - k1 - (d - 2) + 1):
                for tail in _sorted_tails(s - k1 - k2, d - 2, 1):
                    yield SearchShard((k1, k2) + tail)


def enumerate_arrays(s: SearchShard) -> Iterator[ParameterArray]:
    """Arrays in s surviving the B_1-level pruning, in kernel DFS order."""
    ks = s.valencies
    d = len(ks)
    sizes = [d - j for j in range(1, d)]
    for flat in enumerate_groups(ks):
        groups = []
        i = 0
        for sz in sizes:
            groups.append(tuple(flat[i : i + sz]))
            i += sz
        yield ParameterArray(ks, tuple(groups))


def _shard_survivors(s: SearchShard) -> list[tuple[str, FeasibilityRecord]]:
    """(canonical key, record) pairs for one shard, first occurrence per key.

    A database row must be a valid array whose multiplicity equations
    have at least one integral solution; INVALID arrays and valid arrays
    with no multiplicity assignment at all are dropped here.  Arrays
    failing any other check stay, carrying their INFEASIBLE verdict.
    """
    seen: set[str] = set()
    out: list[tuple[str, FeasibilityRecord]] = []
    for a in enumerate_arrays(s):
        canon, key, b1 = canonical_presentation(a)
        if key in seen:
            continue
        seen.add(key)
        rec, member = _run_canonical(canon, key, b1, keep_invalid=False)
        if member:
            out.append((key, rec))
    return out


def _iter_batches(
    shards: list[SearchShard], start: int, jobs: int
) -> Iterator[tuple[int, list[tuple[str, FeasibilityRecord]]]]:
    """(shard index, survivors) in shard order, regardless of worker count."""
    if jobs <= 1 or start >= len(shards):
        for i in range(start, len(shards)):
            yield i, _shard_survivors(shards[i])
        return
    try:
        ctx = multiprocessing.get_context("fork")
    except ValueError:
        ctx = multiprocessing.get_context()
    with ctx.Pool(processes=jobs) as pool:
        results = pool.imap(_shard_survivors, shards[start:], chunksize=1)
        for off, batch in enumerate(results):
            yield start + off, batch


def search(c: SearchConfig) -> Iterator[FeasibilityRecord]:
    """Records in deterministic order, duplicates suppressed globally."""
    shards = list(enumerate_valencies(c))
    seen: set[str] = set()
    for _idx, batch in _iter_batches(shards, 0, c.jobs):
        for key, rec in batch:
            if key not in seen:
                seen.add(key)
                yield rec


@dataclass(frozen=True)
class SearchSummary:
    records: int
    shards_done: int
    shards_total: int


def _write_state(path: str, c: SearchConfig, total: int, nxt: int, offset: int) -> None:
    tmp = path + ".tmp"
    payload = {
        "schema": _STATE_SCHEMA,
        "config": c.key(),
        "shards_total": total,
        "next_shard": nxt,
        "offset": offset,
    }
    with open(tmp, "w", encoding="ascii") as fh:
        json.dump(payload, fh, sort_keys=True)
        fh.write("\n")
    os.replace(tmp, path)


def _load_state(path: str, c: SearchConfig, total: int) -> tuple[int, int]:
    """(next shard, committed byte offset); raises ValueError on mismatch."""
    try:
        with open(path, encoding="ascii") as fh:
            st = json.load(fh)
    except FileNotFoundError:
        raise ValueError(f"no resume state at {path}; run without --resume first")
    except json.JSONDecodeError as e:
        raise ValueError(f"corrupt resume state {path}: {e}")
    if st.get("schema") != _STATE_SCHEMA:
        raise ValueError(f"unsupported resume state schema in {path}")
    if st.get("config") != c.key():
        raise ValueError(
            f"resume state {path} was written for config {st.get('config')}, "
            f"not {c.key()}"
        )
    if st.get("shards_total") != total:
        raise ValueError(f"resume state {path} disagrees on shard count")
    nxt, offset = st["next_shard"], st["offset"]
    if not (isinstance(nxt, int) and isinstance(offset, int)) or nxt < 0 or offset < 0:
        raise ValueError(f"corrupt resume state {path}")
    return nxt, offset


def _committed_keys(path: str, offset: int) -> set[str]:
    keys: set[str] = set()
    with open(path, "rb") as fh:
        blob = fh.read(offset)
    for line in blob.splitlines():
        if line.strip():
            keys.add(json.loads(line)["array"])
    return keys


def run_search(
    c: SearchConfig,
    out_path: str,
    resume: bool = False,
    progress: IO[str] | None = None,
) -> SearchSummary:
    """Run the search into out_path, committing shard by shard.

    A sidecar out_path + '.state.json' records the committed prefix; on
    resume=True the sink is truncated to that prefix and the remaining
    shards replayed.  Fresh runs start the file over.  Output bytes do
    not depend on c.jobs.
    """
    if progress is None:
        progress = sys.stderr
    shards = list(enumerate_valencies(c))
    total = len(shards)
    state_path = out_path + STATE_SUFFIX

    if resume:
        start, offset = _load_state(state_path, c, total)
        try:
            size = os.path.getsize(out_path)
        except OSError:
            size = -1
        if size < offset:
            raise ValueError(
                f"{out_path} is shorter than the committed prefix in "
                f"{state_path}; cannot resume"
            )
        with open(out_path, "ab") as fh:
            fh.truncate(offset)
        seen = _committed_keys(out_path, offset)
    else:
        start, seen = 0, set()
        with open(out_path, "wb"):
            pass
        _write_state(state_path, c, total, 0, 0)

    done = start
    last_report = 0.0
    with open(out_path, "ab") as sink:
        for idx, batch in _iter_batches(shards, start, c.jobs):
            for key, rec in batch:
                if key not in seen:
                    seen.add(key)
                    sink.write(rec.to_json_line().encode("ascii") + b"\n")
            sink.flush()
            _write_state(state_path, c, total, idx + 1, sink.tell())
            done = idx + 1
            now = time.monotonic()
            if now - last_report >= _PROGRESS_SECONDS:
                last_report = now
                print(
                    f"[qpgdb search] shards {done}/{total} survivors={len(seen)}",
                    file=progress,
                )
    print(
        f"[qpgdb search] done: shards {done}/{total} survivors={len(seen)}",
        file=progress,
    )
    return SearchSummary(records=len(seen), shards_done=done, shards_total=total)

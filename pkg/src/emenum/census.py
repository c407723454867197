"""Census driver: filter an index range, accumulate counts, emit records.

Work is split into contiguous index ranges ("pieces") that are filtered
independently, optionally in a process pool, and merged back in index order.
A checkpoint written after every piece lets an interrupted run resume with
an identical record stream.
"""
from __future__ import annotations

import bisect
import logging
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import IO, Callable, Iterable, Iterator

from .core import EnumError, MachineParams, MachineRecord, RejectionReason, edge_count, uses_full_alphabet
from .export import export_machine
from .filter import test_topological_emachine
from .generation import enumerate_strings
from .ranking import iter_flag_blocks, total_count

log = logging.getLogger(__name__)

REJECTIONS = tuple(r for r in RejectionReason if r is not RejectionReason.Accepted)

DEFAULT_PIECE = 1 << 20


@dataclass
class CensusSummary:
    params: MachineParams
    start: int = 0
    stop: int = 0
    accepted: int = 0
    full_alphabet: int = 0
    histogram: Counter = field(default_factory=Counter)
    rejections: Counter = field(default_factory=Counter)
    elapsed: float = 0.0

    @property
    def B1(self) -> int:
        return total_count(self.params)

    @property
    def scanned(self) -> int:
        return self.stop - self.start

    @property
    def ratio(self) -> float:
        return self.accepted / self.B1

    def add(self, accepted: int, full: int, hist: dict, rejections: dict) -> None:
        self.accepted += accepted
        self.full_alphabet += full
        self.histogram.update({e: c for e, c in hist.items() if c})
        self.rejections.update({r: c for r, c in rejections.items() if c})

    def merge(self, other: "CensusSummary") -> "CensusSummary":
        if other.params != self.params:
            raise EnumError("cannot merge summaries for different parameters")
        out = CensusSummary(
            self.params,
            start=min(self.start, other.start),
            stop=max(self.stop, other.stop),
            elapsed=self.elapsed + other.elapsed,
        )
        for part in (self, other):
            out.add(part.accepted, part.full_alphabet, part.histogram, part.rejections)
        return out

    def counts(self) -> dict:
        """Everything except wall time, for equality checks."""
        return {
            "n": self.params.n,
            "k": self.params.k,
            "start": self.start,
            "stop": self.stop,
            "E": self.accepted,
            "F": self.full_alphabet,
            "histogram": dict(sorted(self.histogram.items())),
            "rejections": {r.value: self.rejections.get(r, 0) for r in REJECTIONS},
        }

    def format(self) -> str:
        n, k = self.params.n, self.params.k
        lines = [
            f"n={n} k={k} range=[{self.start}, {self.stop})",
            f"  E   = {self.accepted}",
            f"  F   = {self.full_alphabet}",
            f"  B1  = {self.B1}",
            f"  E/B1 = {self.ratio:.4%}",
            "  edges:",
        ]
        lines += [f"    {e:>3}: {c}" for e, c in sorted(self.histogram.items())]
        lines.append("  rejected:")
        lines += [f"    {r.value}: {self.rejections.get(r, 0)}" for r in REJECTIONS]
        lines.append(f"  elapsed = {self.elapsed:.3f}s")
        return "\n".join(lines)


# --- index ranges -----------------------------------------------------------

def shard_range(params: MachineParams, shards: int, shard_id: int) -> tuple[int, int]:
    """Contiguous index interval for one shard.

    Cut points snap to a flag-block boundary when one lies close to the
    even split; otherwise the even split is used as is.
    """
    if shards < 1 or not 0 <= shard_id < shards:
        raise EnumError(f"need 0 <= shard_id < shards, got {shard_id}/{shards}")
    total = total_count(params)
    cuts = [0]
    bounds = block_boundaries(params)
    slack = total // (10 * shards)
    for i in range(1, shards):
        ideal = i * total // shards
        pos = bisect.bisect_left(bounds, ideal)
        near = [b for b in bounds[max(pos - 1, 0):pos + 1] if abs(b - ideal) <= slack]
        cut = min(near, key=lambda b: abs(b - ideal)) if near else ideal
        cuts.append(max(cut, cuts[-1]))
    cuts.append(total)
    return cuts[shard_id], cuts[shard_id + 1]


def block_boundaries(params: MachineParams, limit: int = 100_000) -> list[int]:
    bounds = []
    for _, base, _size in iter_flag_blocks(params):
        bounds.append(base)
        if len(bounds) > limit:
            break
    return bounds


def pieces(start: int, stop: int, size: int) -> list[tuple[int, int]]:
    return [(a, min(a + size, stop)) for a in range(start, stop, size)]


# --- filtering one range ----------------------------------------------------

def scan_python(params: MachineParams, start: int, stop: int, emit: bool):
    counts = Counter()
    hist = Counter()
    full = 0
    records = []
    for s, index in enumerate_strings(params, start, stop):
        verdict = test_topological_emachine(s, index, params)
        counts[verdict] += 1
        if verdict is RejectionReason.Accepted:
            hist[edge_count(s)] += 1
            full += uses_full_alphabet(s, params)
            if emit:
                records.append((index, s))
    return counts, full, hist, records


def scan_kernel(params: MachineParams, start: int, stop: int, emit: bool):
    from . import kernel

    counters, hist_arr, records = kernel.census_range(params, start, stop, emit)
    counts = Counter({r: int(counters[i]) for i, r in enumerate(kernel.REASONS)})
    hist = Counter({e: int(c) for e, c in enumerate(hist_arr) if c})
    return counts, int(counters[kernel.FULL_ALPHABET]), hist, records


def resolve_engine(params: MachineParams, engine: str) -> str:
    if engine not in ("auto", "kernel", "python"):
        raise EnumError(f"unknown engine {engine!r}")
    if engine != "auto":
        return engine
    try:
        from . import kernel
        kernel.check_supported(params)
    except (ImportError, EnumError):
        return "python"
    return "kernel"


def _scan(job):
    params, start, stop, emit, engine = job
    scan = scan_kernel if engine == "kernel" else scan_python
    t0 = time.perf_counter()
    counts, full, hist, records = scan(params, start, stop, emit)
    return start, stop, counts, full, hist, records, time.perf_counter() - t0


# --- checkpoints ------------------------------------------------------------

@dataclass
class Checkpoint:
    """One-line resume record: ``n k next_index key=value ...``."""

    params: MachineParams
    next_index: int
    summary: CensusSummary
    out_offset: int = 0

    def dumps(self) -> str:
        s = self.summary
        fields = [
            str(self.params.n),
            str(self.params.k),
            str(self.next_index),
            f"start={s.start}",
            f"stop={s.stop}",
            f"accepted={s.accepted}",
            f"full_alphabet={s.full_alphabet}",
        ]
        fields += [f"{r.value}={s.rejections.get(r, 0)}" for r in REJECTIONS]
        hist = ",".join(f"{e}:{c}" for e, c in sorted(s.histogram.items()))
        fields += [f"hist={hist}", f"out_offset={self.out_offset}", f"elapsed={s.elapsed:.6f}"]
        return " ".join(fields) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Checkpoint":
        tokens = text.split()
        try:
            n, k, next_index = (int(x) for x in tokens[:3])
            kv = dict(tok.split("=", 1) for tok in tokens[3:])
            params = MachineParams(n, k)
            summary = CensusSummary(params, start=int(kv["start"]), stop=int(kv["stop"]),
                                    elapsed=float(kv["elapsed"]))
            hist = {
                int(e): int(c) for e, c in (p.split(":") for p in kv["hist"].split(",") if p)
            }
            summary.add(int(kv["accepted"]), int(kv["full_alphabet"]), hist,
                        {r: int(kv[r.value]) for r in REJECTIONS})
            return cls(params, next_index, summary, int(kv["out_offset"]))
        except (ValueError, KeyError) as exc:
            raise EnumError(f"unreadable checkpoint: {exc}") from None

    def save(self, path: str) -> None:
        tmp = f"{path}.tmp"
        with open(tmp, "w") as fh:
            fh.write(self.dumps())
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str) -> "Checkpoint":
        with open(path) as fh:
            return cls.loads(fh.read())


# --- driver -----------------------------------------------------------------

def run_census(
    params: MachineParams,
    *,
    shards: int = 1,
    shard_id: int = 0,
    checkpoint: str | None = None,
    emit: str | None = None,
    out: str | IO[str] | None = None,
    full_alphabet_only: bool = False,
    engine: str = "auto",
    workers: int = 1,
    piece_size: int = DEFAULT_PIECE,
    on_piece: Callable[[Checkpoint], None] | None = None,
) -> CensusSummary:
    """Filter this shard's index range and return its summary.

    ``emit`` selects a record format (``"jsonl"`` or ``"dot"``) written to
    ``out``, a path or open text stream.  With ``checkpoint``, progress is
    saved after each piece and an existing checkpoint is resumed; a path
    ``out`` is then truncated back to the last checkpointed byte offset.
    ``on_piece`` is called after each checkpoint (useful for progress bars).
    """
    engine = resolve_engine(params, engine)
    start, stop = shard_range(params, shards, shard_id)
    summary = CensusSummary(params, start=start, stop=stop)
    next_index = start
    offset = 0

    if checkpoint and os.path.exists(checkpoint):
        ck = Checkpoint.load(checkpoint)
        if ck.params != params or (ck.summary.start, ck.summary.stop) != (start, stop):
            raise EnumError(f"checkpoint {checkpoint} belongs to a different run")
        summary, next_index, offset = ck.summary, ck.next_index, ck.out_offset
        log.info("resuming %s at index %d", params, next_index)

    if emit and out is None:
        raise EnumError("emitting records needs an output")
    stream, owned = _open_output(out, offset, resumed=next_index > start) if emit else (None, False)
    try:
        jobs = [(params, a, b, bool(emit), engine) for a, b in pieces(next_index, stop, piece_size)]
        for a, b, counts, full, hist, records, dt in _run_jobs(jobs, workers):
            summary.add(counts.pop(RejectionReason.Accepted, 0), full, hist, counts)
            summary.elapsed += dt
            if stream is not None:
                for index, s in records:
                    rec = MachineRecord(params, s, index)
                    if full_alphabet_only and not rec.full_alphabet:
                        continue
                    stream.write(export_machine(rec, emit) + "\n")
                stream.flush()
            ck = Checkpoint(params, b, summary, stream.tell() if owned else 0)
            if checkpoint:
                ck.save(checkpoint)
            if on_piece:
                on_piece(ck)
    finally:
        if owned:
            stream.close()
    return summary


def _run_jobs(jobs: list, workers: int) -> Iterator:
    if workers <= 1 or len(jobs) <= 1:
        yield from map(_scan, jobs)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves submission order, so output stays sorted by index
        yield from pool.map(_scan, jobs)


def _open_output(out, offset: int, resumed: bool):
    if not isinstance(out, (str, os.PathLike)):
        return out, False
    if resumed:
        fh = open(out, "r+")
        fh.seek(offset)
        fh.truncate()
    else:
        fh = open(out, "w")
    return fh, True


def merge_summaries(parts: Iterable[CensusSummary]) -> CensusSummary:
    parts = sorted(parts, key=lambda p: p.start)
    total = parts[0]
    for p in parts[1:]:
        total = total.merge(p)
    return total

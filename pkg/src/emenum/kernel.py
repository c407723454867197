"""Compiled census loop.

Mirrors :mod:`emenum.generation` and :mod:`emenum.filter` over fixed-width
int64 arrays so that whole index ranges can be filtered without touching
Python objects.  Indices must fit in int64; :func:`check_supported` guards that.
"""
from __future__ import annotations

import numpy as np
from numba import njit

from .core import EnumError, MachineParams, RejectionReason, flag_of
from .ranking import build_n1_table, total_count, unrank

# Counter slots, in filter order.
REASONS = (
    RejectionReason.TooFewEdges,
    RejectionReason.Complete,
    RejectionReason.NotStronglyConnected,
    RejectionReason.NotCanonical,
    RejectionReason.NotMinimal,
    RejectionReason.Accepted,
)
TOO_FEW, COMPLETE, NOT_SC, NOT_CANON, NOT_MIN, ACCEPTED = range(6)
FULL_ALPHABET = 6
N_COUNTERS = 7

INT64_LIMIT = 2 ** 62


def check_supported(params: MachineParams) -> None:
    if total_count(params) >= INT64_LIMIT:
        raise EnumError(f"{params} has too many strings for the compiled kernel")


def table_array(params: MachineParams) -> np.ndarray:
    n, k = params.n, params.k
    arr = np.zeros((max(n, 2), n * k + 1), dtype=np.int64)
    for (m, j), v in build_n1_table(params).items():
        arr[m, j] = v
    return arr


@njit(cache=True)
def _index_of(s, n, k, table, flag):
    # Recompute the flag of s into `flag`, then n_f + n_r.
    nk = n * k
    flag[0] = -1
    for i in range(1, n + 1):
        flag[i] = nk
    for pos in range(nk):
        t = s[pos]
        if t > 0 and flag[t] == nk:
            flag[t] = pos
    base = 0
    prefix = 1
    for j in range(1, n):
        for _ in range(flag[j] - flag[j - 1] - 1):
            prefix *= j + 1
        inner = 0
        w = 1
        for l in range(flag[j] + 1, j * k):
            w *= j + 1
            inner += w * table[j, l]
        base += prefix * inner
    rank = 0
    for j in range(n):
        for pos in range(flag[j] + 1, flag[j + 1]):
            rank = rank * (j + 2) + s[pos] + 1
    return base + rank


@njit(cache=True)
def _relabel(s, q0, n, k, label, order, out):
    for q in range(n):
        label[q] = -1
    label[q0] = 0
    order[0] = q0
    found = 1
    head = 0
    while head < found:
        old = order[head]
        head += 1
        for j in range(k):
            t = s[old * k + j]
            if t >= 0 and label[t] < 0:
                label[t] = found
                order[found] = t
                found += 1
    if found < n:
        return False
    for i in range(n):
        old = order[i]
        for j in range(k):
            t = s[old * k + j]
            out[i * k + j] = -1 if t < 0 else label[t]
    return True


@njit(cache=True)
def _is_minimal(s, n, k, cls, new, sig):
    # Moore refinement; real states accepting, missing edges lead to sink n.
    width = k + 1
    for q in range(n):
        cls[q] = 0
    cls[n] = 1
    count = 2
    while True:
        for q in range(n + 1):
            sig[q, 0] = cls[q]
            for j in range(k):
                t = n if q == n else s[q * k + j]
                if t < 0:
                    t = n
                sig[q, j + 1] = cls[t]
        fresh = 0
        for q in range(n + 1):
            new[q] = -1
            for p in range(q):
                same = True
                for c in range(width):
                    if sig[p, c] != sig[q, c]:
                        same = False
                        break
                if same:
                    new[q] = new[p]
                    break
            if new[q] < 0:
                new[q] = fresh
                fresh += 1
        if fresh == count:
            break
        count = fresh
        for q in range(n + 1):
            cls[q] = new[q]
    return count == n + 1


@njit(cache=True)
def _census(n, k, table, s, flag, index, count, emit, out_strings, out_index, counters, hist):
    """Filter ``count`` consecutive strings starting at ``s`` (rank ``index``).

    ``s`` and ``flag`` are left at the successor of the last string tested.
    Returns the number of accepted strings written to ``out_strings`` and
    ``out_index`` (always 0 unless ``emit``).
    """
    nk = n * k
    free = np.empty(nk, dtype=np.int64)
    fmax = np.empty(nk, dtype=np.int64)
    nfree = 0
    for j in range(n):
        for pos in range(flag[j] + 1, flag[j + 1]):
            free[nfree] = pos
            fmax[nfree] = j
            nfree += 1
    label = np.empty(n, dtype=np.int64)
    order = np.empty(n, dtype=np.int64)
    r = np.empty(nk, dtype=np.int64)
    rflag = np.empty(n + 1, dtype=np.int64)
    cls = np.empty(n + 1, dtype=np.int64)
    new = np.empty(n + 1, dtype=np.int64)
    sig = np.empty((n + 1, k + 1), dtype=np.int64)
    emitted = 0

    for step in range(count):
        edges = 0
        for pos in range(nk):
            if s[pos] >= 0:
                edges += 1
        verdict = ACCEPTED
        if edges < n:
            verdict = TOO_FEW
        elif n > 1 and edges == nk:
            verdict = COMPLETE
        else:
            for q0 in range(1, n):
                if not _relabel(s, q0, n, k, label, order, r):
                    verdict = NOT_SC
                    break
                if _index_of(r, n, k, table, rflag) <= index:
                    verdict = NOT_CANON
                    break
            if verdict == ACCEPTED and not _is_minimal(s, n, k, cls, new, sig):
                verdict = NOT_MIN
        counters[verdict] += 1
        if verdict == ACCEPTED:
            hist[edges] += 1
            full = True
            for j in range(k):
                used = False
                for q in range(n):
                    if s[q * k + j] >= 0:
                        used = True
                        break
                if not used:
                    full = False
                    break
            if full:
                counters[FULL_ALPHABET] += 1
            if emit:
                for pos in range(nk):
                    out_strings[emitted, pos] = s[pos]
                out_index[emitted] = index
                emitted += 1

        # successor within the flag block, else first string of the next flag
        index += 1
        advanced = False
        for i in range(nfree - 1, -1, -1):
            pos = free[i]
            if s[pos] < fmax[i]:
                s[pos] += 1
                advanced = True
                break
            s[pos] = -1
        if advanced:
            continue
        moved = False
        for i in range(n - 1, 0, -1):
            if flag[i] > flag[i - 1] + 1:
                flag[i] -= 1
                for m in range(i + 1, n):
                    flag[m] = m * k - 1
                moved = True
                break
        if not moved:
            break
        for pos in range(nk):
            s[pos] = -1
        for i in range(1, n):
            s[flag[i]] = i
        nfree = 0
        for j in range(n):
            for pos in range(flag[j] + 1, flag[j + 1]):
                free[nfree] = pos
                fmax[nfree] = j
                nfree += 1
    return emitted


def census_range(params: MachineParams, start: int, stop: int, emit: bool = False,
                 chunk: int = 1 << 18):
    """Filter indices ``[start, stop)``.

    Returns ``(counters, hist, records)``: counter slots as in :data:`REASONS`
    plus the full-alphabet count, accepted counts per edge count, and
    ``(index, string)`` pairs for accepted strings when ``emit`` is set.
    """
    check_supported(params)
    n, k = params.n, params.k
    counters = np.zeros(N_COUNTERS, dtype=np.int64)
    hist = np.zeros(n * k + 1, dtype=np.int64)
    records: list[tuple[int, tuple[int, ...]]] = []
    if start >= stop:
        return counters, hist, records
    table = table_array(params)
    s = np.array(unrank(start, params), dtype=np.int64)
    flag = np.array(flag_of(s.tolist(), params), dtype=np.int64)
    cap = chunk if emit else 0
    out_strings = np.empty((cap, n * k), dtype=np.int64)
    out_index = np.empty(cap, dtype=np.int64)
    index = start
    while index < stop:
        todo = min(chunk, stop - index)
        got = _census(n, k, table, s, flag, index, todo, emit, out_strings, out_index,
                      counters, hist)
        records.extend(
            (int(out_index[i]), tuple(out_strings[i].tolist())) for i in range(got)
        )
        index += todo
    return counters, hist, records

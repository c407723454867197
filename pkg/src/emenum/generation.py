"""Successor-based generation of accessible-form strings in index order."""
from __future__ import annotations

from typing import Iterator, Sequence

from .core import ABSENT, IndexOutOfRange, MachineParams, flag_of
from .ranking import total_count, unrank


def first_flag(params: MachineParams) -> tuple[int, ...]:
    n, k = params.n, params.k
    return (-1, *(i * k - 1 for i in range(1, n)), n * k)


def next_flag(flag: Sequence[int], params: MachineParams) -> tuple[int, ...] | None:
    """Next flag in reverse lexicographic order, or ``None`` when exhausted."""
    n, k = params.n, params.k
    f = list(flag)
    for i in range(n - 1, 0, -1):
        if f[i] > f[i - 1] + 1:
            f[i] -= 1
            for m in range(i + 1, n):
                f[m] = m * k - 1
            return tuple(f)
    return None


def iter_flags(params: MachineParams) -> Iterator[tuple[int, ...]]:
    flag = first_flag(params)
    while flag is not None:
        yield flag
        flag = next_flag(flag, params)


def first_string(flag: Sequence[int], params: MachineParams) -> tuple[int, ...]:
    s = [ABSENT] * params.length
    for i in range(1, params.n):
        s[flag[i]] = i
    return tuple(s)


def max_state_before(position: int, flag: Sequence[int]) -> int:
    """Largest state that may appear at a free ``position``."""
    m = 0
    while m + 1 < len(flag) and flag[m + 1] < position:
        m += 1
    return m


def free_positions(flag: Sequence[int], params: MachineParams) -> list[tuple[int, int]]:
    """``(position, max_state)`` for every non-flag position, left to right."""
    return [
        (pos, j)
        for j in range(params.n)
        for pos in range(flag[j] + 1, flag[j + 1])
    ]


def next_string(s: Sequence[int], flag: Sequence[int], params: MachineParams) -> tuple[int, ...] | None:
    """Lexicographic successor of ``s`` within its flag block, or ``None``."""
    s = list(s)
    for pos, m in reversed(free_positions(flag, params)):
        if s[pos] < m:
            s[pos] += 1
            return tuple(s)
        s[pos] = ABSENT
    return None


def enumerate_strings(params: MachineParams, start: int = 0, stop: int | None = None):
    """Yield ``(string, index)`` for indices in ``[start, stop)``.

    Generation begins by unranking ``start`` and then walks successors, so the
    cost per string is amortised constant.
    """
    total = total_count(params)
    if stop is None:
        stop = total
    if not (0 <= start <= stop <= total):
        raise IndexOutOfRange(f"range [{start}, {stop}) outside [0, {total})")
    if start == stop:
        return
    s = list(unrank(start, params))
    flag = flag_of(s, params)
    free = free_positions(flag, params)
    index = start
    while index < stop:
        yield tuple(s), index
        index += 1
        for pos, m in reversed(free):
            if s[pos] < m:
                s[pos] += 1
                break
            s[pos] = ABSENT
        else:
            flag = next_flag(flag, params)
            if flag is None:
                break
            s = list(first_string(flag, params))
            free = free_positions(flag, params)

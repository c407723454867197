"""Rank/unrank bijection between accessible-form strings and ``0..B-1``.

Strings are ordered by flag (reverse lexicographic), then lexicographically
by digit within a flag.  The index of a string is the first index of its
flag block plus a mixed-radix rank of its free (non-flag) positions.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .core import (
    ABSENT,
    FlagMismatch,
    IndexOutOfRange,
    MachineParams,
    check_flag,
    check_string,
    digit,
    flag_of,
)

N1Table = dict


@lru_cache(maxsize=64)
def build_n1_table(params: MachineParams) -> N1Table:
    """Suffix counts ``N1[m, j]``: completions of a string after position ``j``
    given that state ``m`` is the newest state introduced so far.

    Returns a dict keyed by ``(m, j)`` for ``1 <= m <= n-1`` and
    ``m-1 <= j <= m*k-1``.  Empty for ``n == 1``.
    """
    n, k = params.n, params.k
    table: N1Table = {}
    if n == 1:
        return table
    for j in range(n - 2, (n - 1) * k):
        table[n - 1, j] = (n + 1) ** (n * k - 1 - j)
    for m in range(n - 2, 0, -1):
        table[m, m * k - 1] = sum(
            (m + 2) ** i * table[m + 1, m * k + i] for i in range(k)
        )
        for j in range(m * k - 2, m - 2, -1):
            table[m, j] = (m + 2) * table[m, j + 1] + table[m + 1, j + 1]
    return table


def flag_base_index(flag: Sequence[int], params: MachineParams, table: N1Table | None = None) -> int:
    """Index of the first string carrying ``flag``."""
    flag = check_flag(flag, params)
    if table is None:
        table = build_n1_table(params)
    n, k = params.n, params.k
    total = 0
    prefix = 1
    for j in range(1, n):
        prefix *= (j + 1) ** (flag[j] - flag[j - 1] - 1)
        inner = sum(
            (j + 1) ** (l - flag[j]) * table[j, l] for l in range(flag[j] + 1, j * k)
        )
        total += prefix * inner
    return total


def block_size(flag: Sequence[int], params: MachineParams) -> int:
    """Number of strings sharing ``flag``."""
    size = 1
    for j in range(params.n):
        size *= (j + 2) ** (flag[j + 1] - flag[j] - 1)
    return size


def rank_within_flag(s: Sequence[int], flag: Sequence[int], params: MachineParams) -> int:
    s = check_string(s, params)
    flag = tuple(flag)
    if flag_of(s, params) != flag:
        raise FlagMismatch(f"string does not carry flag {flag}")
    return _free_rank(s, flag, params.n)


def _free_rank(s, flag, n) -> int:
    # Free positions of segment j (between f_j and f_{j+1}) hold base-(j+2) digits.
    rank = 0
    for j in range(n):
        radix = j + 2
        for pos in range(flag[j] + 1, flag[j + 1]):
            rank = rank * radix + digit(s[pos])
    return rank


def string_index(s: Sequence[int], params: MachineParams) -> int:
    flag = flag_of(s, params)
    return flag_base_index(flag, params) + _free_rank(s, flag, params.n)


@lru_cache(maxsize=64)
def total_count(params: MachineParams) -> int:
    """Number of accessible-form strings for ``params``."""
    if params.n == 1:
        return 2 ** params.k
    table = build_n1_table(params)
    return sum(2 ** l * table[1, l] for l in range(params.k))


def unrank(index: int, params: MachineParams) -> tuple[int, ...]:
    """Inverse of :func:`string_index`."""
    total = total_count(params)
    if not 0 <= index < total:
        raise IndexOutOfRange(f"index {index} outside [0, {total}) for {params}")
    flag, rest = _select_flag(index, params)
    return _decode_free(rest, flag, params)


def _select_flag(index: int, params: MachineParams) -> tuple[tuple[int, ...], int]:
    # Fix f_1, f_2, ... greedily; larger positions come first in the order.
    n, k = params.n, params.k
    table = build_n1_table(params)
    flag = [-1]
    prefix = 1
    for j in range(1, n):
        lo = flag[-1] + 1
        for l in range(j * k - 1, lo - 1, -1):
            count = prefix * (j + 1) ** (l - lo) * table[j, l]
            if index < count or l == lo:
                break
            index -= count
        prefix *= (j + 1) ** (l - lo)
        flag.append(l)
    flag.append(n * k)
    # What remains is the within-block rank, scaled by the block's suffix count.
    return tuple(flag), index


def _decode_free(rank: int, flag, params: MachineParams) -> tuple[int, ...]:
    n = params.n
    s = [ABSENT] * params.length
    for j in range(1, n):
        s[flag[j]] = j
    for j in range(n - 1, -1, -1):
        radix = j + 2
        for pos in range(flag[j + 1] - 1, flag[j], -1):
            rank, d = divmod(rank, radix)
            s[pos] = d - 1
    if rank:
        raise IndexOutOfRange("index does not decode within its flag block")
    return tuple(s)


def iter_flag_blocks(params: MachineParams):
    """Yield ``(flag, base_index, size)`` for each flag in enumeration order."""
    from .generation import iter_flags

    base = 0
    for flag in iter_flags(params):
        size = block_size(flag, params)
        yield flag, base, size
        base += size

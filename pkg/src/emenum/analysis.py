"""Structural tests on a transition string."""
from __future__ import annotations

from collections import deque
from typing import Sequence

from .core import ABSENT, MachineParams, check_string, uses_full_alphabet  # noqa: F401


def relabel_from(s: Sequence[int], q0: int, params: MachineParams) -> tuple[int, ...] | None:
    """Rewrite ``s`` with ``q0`` as the start state.

    States are numbered in the order they are first reached when the
    already-numbered states are scanned in order, each following symbols
    ``0..k-1``.  Returns ``None`` if some state is never reached.
    """
    n, k = params.n, params.k
    label = [-1] * n
    label[q0] = 0
    order = [q0]
    for old in order:
        for j in range(k):
            t = s[old * k + j]
            if t != ABSENT and label[t] < 0:
                label[t] = len(order)
                order.append(t)
    if len(order) < n:
        return None
    out = []
    for old in order:
        for j in range(k):
            t = s[old * k + j]
            out.append(ABSENT if t == ABSENT else label[t])
    return tuple(out)


def successors(s: Sequence[int], params: MachineParams) -> list[list[int]]:
    k = params.k
    return [
        [t for t in s[q * k:(q + 1) * k] if t != ABSENT] for q in range(params.n)
    ]


def _reaches_all(adj: list[list[int]], start: int) -> bool:
    seen = [False] * len(adj)
    seen[start] = True
    queue = deque([start])
    count = 1
    while queue:
        for t in adj[queue.popleft()]:
            if not seen[t]:
                seen[t] = True
                count += 1
                queue.append(t)
    return count == len(adj)


def is_strongly_connected(s: Sequence[int], params: MachineParams) -> bool:
    """Forward and backward reachability from state 0 both cover every state."""
    adj = successors(s, params)
    if not _reaches_all(adj, 0):
        return False
    rev: list[list[int]] = [[] for _ in adj]
    for q, targets in enumerate(adj):
        for t in targets:
            rev[t].append(q)
    return _reaches_all(rev, 0)


def equivalence_classes(s: Sequence[int], params: MachineParams) -> list[int]:
    """Moore partition refinement with every real state accepting.

    Missing edges go to a rejecting sink (index ``n``).  Returns the class id
    of each real state.
    """
    n, k = params.n, params.k
    sink = n
    delta = [
        [sink if t == ABSENT else t for t in s[q * k:(q + 1) * k]] for q in range(n)
    ]
    delta.append([sink] * k)
    cls = [0] * n + [1]
    count = 2
    while True:
        ids: dict[tuple, int] = {}
        new = [
            ids.setdefault((cls[q], *(cls[t] for t in delta[q])), len(ids))
            for q in range(n + 1)
        ]
        if len(ids) == count:
            return new[:n]
        cls, count = new, len(ids)


def is_minimal(s: Sequence[int], params: MachineParams) -> bool:
    s = check_string(s, params)
    return len(set(equivalence_classes(s, params))) == params.n

"""Decide whether a candidate string is the canonical form of a topological
epsilon-machine."""
from __future__ import annotations

from typing import Sequence

from .analysis import is_minimal, relabel_from
from .core import MachineParams, NotStronglyConnected, RejectionReason, edge_count
from .ranking import string_index


def canonical_index(s: Sequence[int], params: MachineParams) -> tuple[int, tuple[int, ...]]:
    """Smallest index over the ``n`` relabelings of a strongly connected ``s``."""
    best = None
    for q0 in range(params.n):
        r = relabel_from(s, q0, params)
        if r is None:
            raise NotStronglyConnected(f"state {q0} does not reach every state")
        candidate = (string_index(r, params), r)
        if best is None or candidate[0] < best[0]:
            best = candidate
    return best


def test_topological_emachine(s: Sequence[int], index: int, params: MachineParams) -> RejectionReason:
    """Run the checks in order of increasing cost and report the first failure.

    ``index`` must be the rank of ``s``.  A single-state machine with every
    edge present is accepted; completeness only rules out ``n > 1``.
    """
    n, k = params.n, params.k
    edges = edge_count(s)
    if edges < n:
        return RejectionReason.TooFewEdges
    if n > 1 and edges == n * k:
        return RejectionReason.Complete
    for q0 in range(1, n):
        r = relabel_from(s, q0, params)
        if r is None:
            return RejectionReason.NotStronglyConnected
        if string_index(r, params) <= index:
            return RejectionReason.NotCanonical
    if not is_minimal(s, params):
        return RejectionReason.NotMinimal
    return RejectionReason.Accepted


# keep pytest from collecting the function above when imported into a test module
test_topological_emachine.__test__ = False

"""Published census values and a checker that recomputes them.

The binary-alphabet totals E(n, 2) are OEIS A181554.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from math import comb

from .census import CensusSummary, run_census
from .core import MachineParams
from .ranking import total_count

# binary alphabet: n -> (E, B1 or None, {edges: count})
BINARY = {
    1: (3, None, {1: 2, 2: 1}),
    2: (7, 45, {2: 1, 3: 6}),
    3: (78, 816, {3: 2, 4: 22, 5: 54}),
    4: (1388, 20225, {4: 3, 5: 68, 6: 403, 7: 914}),
    5: (35186, 632700, {5: 6, 6: 192, 7: 2228, 8: 10886, 9: 21874}),
    6: (1132613, 23836540, {6: 9, 7: 512, 8: 9721, 9: 85974, 10: 360071, 11: 676326}),
    7: (43997426, 1048592640, {
        7: 18, 8: 1312, 9: 37736, 10: 526760, 11: 3809428, 12: 14229762, 13: 25392410,
    }),
    8: (1993473480, 52696514169, {
        8: 30, 9: 3264, 10: 133218, 11: 2729336, 12: 30477505, 13: 190505028,
        14: 651856885, 15: 1117768214,
    }),
}

# (n, k) -> number of machines E
ALL_ALPHABET = {
    (1, 2): 3, (1, 3): 7, (1, 4): 15, (1, 5): 31, (1, 6): 63,
    (2, 2): 7, (2, 3): 141, (2, 4): 1873, (2, 5): 20925, (2, 6): 213997,
    (3, 2): 78, (3, 3): 15598, (3, 4): 1658606, (3, 5): 136146590,
    (4, 2): 1388, (4, 3): 3625638,
    (5, 2): 35186,
    (6, 2): 1132613,
    (7, 2): 43997426,
    (8, 2): 1993473480,
}

# (n, k) -> number of machines using every letter, F
FULL_ALPHABET = {
    (1, 2): 1, (1, 3): 1, (1, 4): 1, (1, 5): 1, (1, 6): 1,
    (2, 2): 7, (2, 3): 120, (2, 4): 1351, (2, 5): 12900, (2, 6): 113827,
    (3, 2): 78, (3, 3): 15364, (3, 4): 1596682, (3, 5): 128008760,
    (4, 2): 1388, (4, 3): 3621474,
    (5, 2): 35186,
    (6, 2): 1132613,
    (7, 2): 43997426,
    (8, 2): 1993473480,
}

# kernel throughput, used only to skip cells that would exceed the budget
SECONDS_PER_STRING = 3e-7


def alphabet_identity(e: int, f_by_l: dict[int, int], k: int) -> bool:
    """``E_{n,k} == sum_l C(k, l) F_{n,l}``: each l-letter machine embeds in
    ``C(k, l)`` ways into a k-letter alphabet."""
    return e == sum(comb(k, l) * f_by_l[l] for l in range(1, k + 1))


def cells(table: int) -> list[tuple[int, int]]:
    if table == 1:
        return [(n, 2) for n in BINARY]
    if table == 2:
        return sorted(ALL_ALPHABET)
    if table == 3:
        return sorted(FULL_ALPHABET)
    raise ValueError(f"no table {table}")


def estimated_seconds(params: MachineParams) -> float:
    return total_count(params) * SECONDS_PER_STRING


@dataclass
class CellResult:
    table: int
    params: MachineParams
    status: str  # "pass", "fail" or "skip"
    detail: str

    def line(self) -> str:
        return f"{self.status.upper():4} table {self.table} n={self.params.n} k={self.params.k}: {self.detail}"


def check_cell(table: int, summary: CensusSummary) -> tuple[bool, str]:
    n, k = summary.params.n, summary.params.k
    hist = dict(summary.histogram)
    if table == 1:
        e, b1, want_hist = BINARY[n]
        problems = []
        if summary.accepted != e:
            problems.append(f"E={summary.accepted} expected {e}")
        if b1 is not None and summary.B1 != b1:
            problems.append(f"B1={summary.B1} expected {b1}")
        if hist != want_hist:
            problems.append(f"histogram {hist} expected {want_hist}")
        ok = not problems
        return ok, "; ".join(problems) or f"E={e} B1={summary.B1} histogram ok"
    if table == 2:
        want = ALL_ALPHABET[n, k]
        return summary.accepted == want, f"E={summary.accepted} expected {want}"
    want = FULL_ALPHABET[n, k]
    return summary.full_alphabet == want, f"F={summary.full_alphabet} expected {want}"


def verify_tables(tables=(1, 2, 3), max_states: int = 6, budget_seconds: float = 120.0,
                  only: set | None = None, engine: str = "auto"):
    """Recompute published cells and compare.

    Cells with more than ``max_states`` states, or whose estimated run time
    exceeds ``budget_seconds``, are reported as skipped.  Yields
    :class:`CellResult` as each cell finishes.
    """
    cache: dict[MachineParams, CensusSummary] = {}
    for table in tables:
        for n, k in cells(table):
            params = MachineParams(n, k)
            if only is not None and (n, k) not in only:
                continue
            if n > max_states:
                yield CellResult(table, params, "skip", f"n > {max_states}")
                continue
            if params not in cache and estimated_seconds(params) > budget_seconds:
                yield CellResult(table, params, "skip",
                                 f"estimated {estimated_seconds(params):.0f}s over budget")
                continue
            if params not in cache:
                t0 = time.perf_counter()
                cache[params] = run_census(params, engine=engine)
                cache[params].elapsed = time.perf_counter() - t0
            ok, detail = check_cell(table, cache[params])
            yield CellResult(table, params, "pass" if ok else "fail",
                             f"{detail} ({cache[params].elapsed:.2f}s)")

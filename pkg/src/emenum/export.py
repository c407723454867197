"""Text renderings of accepted machines: JSON lines and Graphviz dot."""
from __future__ import annotations

import json

from .core import ABSENT, MachineRecord


def to_jsonl(record: MachineRecord) -> str:
    payload = {
        "n": record.params.n,
        "k": record.params.k,
        # decimal string: indices are unbounded integers
        "index": str(record.index),
        "string": list(record.string),
        "edges": record.edge_count,
        "full_alphabet": record.full_alphabet,
    }
    return json.dumps(payload, separators=(",", ":"))


def dot_edges(record: MachineRecord) -> list[tuple[int, int, str]]:
    """``(source, target, label)`` with labels ``"1/d|x"``."""
    k = record.params.k
    edges = []
    for q in range(record.params.n):
        d = record.out_degree[q]
        for x in range(k):
            t = record.string[q * k + x]
            if t != ABSENT:
                edges.append((q, t, f"1/{d}|{x}"))
    return edges


def to_dot(record: MachineRecord) -> str:
    lines = [f"digraph m{record.index} {{"]
    lines.extend(f"  {q};" for q in range(record.params.n))
    lines.extend(f'  {a} -> {b} [label="{label}"];' for a, b, label in dot_edges(record))
    lines.append("}")
    return "\n".join(lines)


FORMATS = {"jsonl": to_jsonl, "dot": to_dot}


def export_machine(record: MachineRecord, fmt: str) -> str:
    try:
        return FORMATS[fmt](record)
    except KeyError:
        raise ValueError(f"unknown export format {fmt!r}") from None

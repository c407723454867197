"""Shared types for the enumeration: parameters, transition strings, flags.

A transition string is a tuple of ``n*k`` ints.  Entry ``i*k + j`` is the
state reached from state ``i`` on symbol ``j``, or :data:`ABSENT` when that
edge does not exist.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

ABSENT = -1

TransitionString = tuple
Flag = tuple


class EnumError(ValueError):
    """Base class for input errors raised by this package."""


class MalformedString(EnumError):
    pass


class InvalidFlag(EnumError):
    pass


class FlagMismatch(EnumError):
    pass


class IndexOutOfRange(EnumError):
    pass


class NotStronglyConnected(EnumError):
    pass


class RejectionReason(enum.Enum):
    TooFewEdges = "too_few_edges"
    Complete = "complete"
    NotStronglyConnected = "not_strongly_connected"
    NotCanonical = "not_canonical"
    NotMinimal = "not_minimal"
    Accepted = "accepted"


@dataclass(frozen=True)
class MachineParams:
    n: int
    k: int

    def __post_init__(self):
        if not isinstance(self.n, int) or not isinstance(self.k, int):
            raise EnumError(f"n and k must be integers, got {self.n!r}, {self.k!r}")
        if self.n < 1 or self.k < 1:
            raise EnumError(f"need n >= 1 and k >= 1, got n={self.n}, k={self.k}")

    @property
    def length(self) -> int:
        return self.n * self.k


def digit(entry: int) -> int:
    """Positional digit of an entry: 0 for an absent edge, ``state + 1`` otherwise."""
    return entry + 1


def check_string(s: Sequence[int], params: MachineParams) -> TransitionString:
    s = tuple(s)
    if len(s) != params.length:
        raise MalformedString(f"expected {params.length} entries, got {len(s)}")
    for t in s:
        if not (t == ABSENT or 0 <= t < params.n):
            raise MalformedString(f"entry {t!r} out of range for n={params.n}")
    return s


def edge_count(s: Sequence[int]) -> int:
    return sum(1 for t in s if t != ABSENT)


def out_degrees(s: Sequence[int], params: MachineParams) -> list[int]:
    k = params.k
    return [edge_count(s[i * k:(i + 1) * k]) for i in range(params.n)]


def check_flag(flag: Sequence[int], params: MachineParams) -> Flag:
    flag = tuple(flag)
    n, k = params.n, params.k
    if len(flag) != n + 1 or flag[0] != -1 or flag[-1] != n * k:
        raise InvalidFlag(f"bad flag {flag} for n={n}, k={k}")
    for i in range(1, n):
        if not (flag[i - 1] < flag[i] <= i * k - 1):
            raise InvalidFlag(f"bad flag {flag} for n={n}, k={k}")
    return flag


def flag_of(s: Sequence[int], params: MachineParams) -> Flag:
    """First-occurrence positions of states ``1..n-1``, with sentinels -1 and nk.

    Raises :class:`MalformedString` unless ``s`` is in accessible form.
    """
    s = check_string(s, params)
    n = params.n
    first = [-1] * n
    for pos, t in enumerate(s):
        if t > 0 and first[t] < 0:
            first[t] = pos
    flag = (-1, *first[1:], params.length)
    if any(f < 0 for f in first[1:]):
        raise MalformedString(f"{format_string(s)}: some state is never reached")
    try:
        return check_flag(flag, params)
    except InvalidFlag:
        raise MalformedString(
            f"{format_string(s)}: states are not labeled in reachability order"
        ) from None


def uses_full_alphabet(s: Sequence[int], params: MachineParams) -> bool:
    k = params.k
    return all(
        any(s[i * k + j] != ABSENT for i in range(params.n)) for j in range(k)
    )


def format_string(s: Iterable[int]) -> str:
    return ",".join(str(t) for t in s)


def parse_ints(text: str) -> tuple[int, ...]:
    text = text.strip().strip("[]()")
    if not text:
        return ()
    try:
        return tuple(int(tok) for tok in text.replace(" ", "").split(","))
    except ValueError:
        raise EnumError(f"cannot parse integer list from {text!r}") from None


format_flag = format_string


@dataclass(frozen=True)
class MachineRecord:
    """A canonical topological epsilon-machine."""

    params: MachineParams
    string: TransitionString
    index: int
    edge_count: int = field(init=False)
    full_alphabet: bool = field(init=False)
    out_degree: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "edge_count", edge_count(self.string))
        object.__setattr__(self, "full_alphabet", uses_full_alphabet(self.string, self.params))
        object.__setattr__(self, "out_degree", tuple(out_degrees(self.string, self.params)))

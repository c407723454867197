import pytest

from emenum.core import ABSENT, IndexOutOfRange, MachineParams, flag_of
from emenum.generation import (
    enumerate_strings,
    first_flag,
    first_string,
    iter_flags,
    max_state_before,
    next_flag,
    next_string,
)
from emenum.ranking import block_size, string_index, total_count

from oracle import naive_accessible_strings

X = ABSENT
P22 = MachineParams(2, 2)
P33 = MachineParams(3, 3)


def test_first_flag():
    assert first_flag(P22) == (-1, 1, 4)
    assert first_flag(P33) == (-1, 2, 5, 9)
    assert first_flag(MachineParams(1, 4)) == (-1, 4)


def test_next_flag():
    assert next_flag((-1, 1, 4), P22) == (-1, 0, 4)
    assert next_flag((-1, 0, 4), P22) is None
    assert next_flag((-1, 2, 5, 9), P33) == (-1, 2, 4, 9)
    assert next_flag((-1, 2, 3, 9), P33) == (-1, 1, 5, 9)
    assert next_flag((-1, 4), MachineParams(1, 4)) is None


@pytest.mark.parametrize("n, k", [(3, 3), (4, 2), (5, 3)])
def test_flags_strictly_descending(n, k):
    flags = list(iter_flags(MachineParams(n, k)))
    keys = [f[1:-1] for f in flags]
    assert keys == sorted(keys, reverse=True)
    assert len(set(keys)) == len(keys)
    assert flags[-1][1:-1] == tuple(range(n - 1))


def test_first_string():
    assert first_string((-1, 1, 4), P22) == (X, 1, X, X)
    assert first_string((-1, 0, 4), P22) == (1, X, X, X)
    assert first_string((-1, 2, 5, 9), P33) == (X, X, 1, X, X, 2, X, X, X)


@pytest.mark.parametrize(
    "position, flag, expected",
    [(0, (-1, 1, 4), 0), (3, (-1, 1, 4), 1), (4, (-1, 2, 5, 9), 1), (8, (-1, 2, 5, 9), 2)],
)
def test_max_state_before(position, flag, expected):
    assert max_state_before(position, flag) == expected


def test_next_string():
    f = (-1, 1, 4)
    assert next_string((X, 1, X, X), f, P22) == (X, 1, X, 0)
    assert next_string((X, 1, 1, 1), f, P22) == (0, 1, X, X)
    assert next_string((0, 1, 1, 1), f, P22) is None


def test_enumerate_full():
    got = list(enumerate_strings(P22))
    assert len(got) == 45
    assert [i for _, i in got] == list(range(45))
    assert len(list(enumerate_strings(MachineParams(3, 2)))) == 816


def test_enumerate_range_is_second_block():
    got = list(enumerate_strings(P22, 18, 45))
    assert len(got) == 27
    assert {flag_of(s, P22) for s, _ in got} == {(-1, 0, 4)}


def test_enumerate_bad_range():
    with pytest.raises(IndexOutOfRange):
        list(enumerate_strings(P22, 10, 46))


@pytest.mark.parametrize("n, k", [(1, 1), (1, 4), (2, 1), (2, 2), (3, 2), (2, 4), (3, 3), (4, 2)])
def test_generation_matches_oracle(n, k):
    p = MachineParams(n, k)
    got = [s for s, _ in enumerate_strings(p)]
    assert got == naive_accessible_strings(n, k)


@pytest.mark.parametrize("n, k", [(3, 2), (2, 3), (4, 2)])
def test_generated_flags_and_blocks(n, k):
    p = MachineParams(n, k)
    seen = {}
    for s, i in enumerate_strings(p):
        assert string_index(s, p) == i
        f = flag_of(s, p)
        seen[f] = seen.get(f, 0) + 1
    assert list(seen) == list(iter_flags(p))
    assert all(seen[f] == block_size(f, p) for f in seen)


def test_resume_mid_block_matches_full_run():
    p = MachineParams(4, 2)
    full = list(enumerate_strings(p))
    assert list(enumerate_strings(p, 1234, 5678)) == full[1234:5678]
    assert sum(1 for _ in enumerate_strings(p, 0, total_count(p))) == len(full)

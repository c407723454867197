import numpy as np
import pytest

from emenum.census import scan_kernel, scan_python
from emenum.core import EnumError, MachineParams
from emenum.kernel import census_range, check_supported
from emenum.ranking import total_count


@pytest.mark.parametrize(
    "n, k", [(1, 1), (1, 2), (1, 5), (2, 1), (2, 2), (3, 1), (3, 2), (2, 3), (4, 2), (2, 4), (3, 3)]
)
def test_kernel_matches_python_engine(n, k):
    p = MachineParams(n, k)
    total = total_count(p)
    assert scan_kernel(p, 0, total, True) == scan_python(p, 0, total, True)


@pytest.mark.parametrize("start, stop", [(0, 1), (17, 18), (5, 4000), (3333, 20225)])
def test_kernel_subranges(start, stop):
    p = MachineParams(4, 2)
    assert scan_kernel(p, start, stop, True) == scan_python(p, start, stop, True)


def test_kernel_chunk_boundaries_do_not_matter():
    p = MachineParams(3, 3)
    total = total_count(p)
    c1, h1, r1 = census_range(p, 100, total, emit=True, chunk=7)
    c2, h2, r2 = census_range(p, 100, total, emit=True)
    assert np.array_equal(c1, c2) and np.array_equal(h1, h2) and r1 == r2


def test_kernel_refuses_oversized_params():
    with pytest.raises(EnumError):
        check_supported(MachineParams(12, 3))

"""Enumeration of topological epsilon-machines as accessible DFAs."""
from .core import (
    ABSENT,
    EnumError,
    IndexOutOfRange,
    MachineParams,
    MachineRecord,
    MalformedString,
    RejectionReason,
    edge_count,
    flag_of,
)
from .ranking import string_index, total_count, unrank
from .filter import canonical_index, test_topological_emachine
from .census import CensusSummary, run_census

__all__ = [
    "ABSENT",
    "CensusSummary",
    "EnumError",
    "IndexOutOfRange",
    "MachineParams",
    "MachineRecord",
    "MalformedString",
    "RejectionReason",
    "canonical_index",
    "edge_count",
    "flag_of",
    "run_census",
    "string_index",
    "test_topological_emachine",
    "total_count",
    "unrank",
]
__version__ = "0.1.0"

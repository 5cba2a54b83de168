"""Integer bitsets over row indices (bit i set <=> row i is a member)."""

import sys
from typing import Iterable, Iterator, List

# A set of row indices packed into a Python int.
MatchSet = int

EMPTY: MatchSet = 0


def make_bitset(indexes: Iterable[int]) -> MatchSet:
    value = 0
    for idx in indexes:
        value |= 1 << idx
    return value


def full_bitset(n_rows: int) -> MatchSet:
    """All rows 0..n_rows-1."""
    return (1 << n_rows) - 1


if sys.version_info >= (3, 10):
    def count_bits(value: MatchSet) -> int:
        return value.bit_count()
else:
    def count_bits(value: MatchSet) -> int:
        return bin(value).count("1")


def lowest_index(value: MatchSet) -> int:
    """Index of the lowest set bit; value must be nonzero."""
    return (value & -value).bit_length() - 1


def iter_indexes(value: MatchSet) -> Iterator[int]:
    while value:
        low = value & -value
        yield low.bit_length() - 1
        value ^= low


def to_indexes(value: MatchSet) -> List[int]:
    return list(iter_indexes(value))

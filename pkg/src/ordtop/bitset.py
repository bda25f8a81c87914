"""Subsets of ``range(n)`` encoded as Python ints (bit i set iff i is a member)."""
from __future__ import annotations

from typing import Iterable, Iterator

ElementSet = int

#: Cap on ground-set size for anything that enumerates all subsets.
GROUND_CAP = 16


def mask(members: Iterable[int]) -> ElementSet:
    m = 0
    for i in members:
        m |= 1 << i
    return m


def members(m: ElementSet) -> list[int]:
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


def iter_bits(m: ElementSet) -> Iterator[int]:
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def full(n: int) -> ElementSet:
    return (1 << n) - 1


def popcount(m: ElementSet) -> int:
    return bin(m).count("1")


def is_subset(a: ElementSet, b: ElementSet) -> bool:
    return a & ~b == 0


def submasks(m: ElementSet) -> Iterator[ElementSet]:
    """Yield every nonempty submask of ``m`` (descending order)."""
    s = m
    while s:
        yield s
        s = (s - 1) & m

"""Topologies on a finite ground set, stored as their full family of open sets."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, NamedTuple

from .bitset import GROUND_CAP, ElementSet, full, members
from .errors import BadIndex, GroundMismatch, GroundTooLarge, OrdTopError


@dataclass(frozen=True)
class Topology:
    ground_size: int
    opens: frozenset[ElementSet]

    @cached_property
    def min_nbhds(self) -> tuple[ElementSet, ...]:
        """Smallest open set containing each point (open, since the family is finite)."""
        n = self.ground_size
        out = [full(n)] * n
        for u in self.opens:
            rest = u
            while rest:
                low = rest & -rest
                x = low.bit_length() - 1
                out[x] &= u
                rest ^= low
        return tuple(out)

    def is_open(self, s: ElementSet) -> bool:
        return s in self.opens

    def is_valid(self) -> bool:
        """Check the topology axioms directly (quadratic in the number of opens)."""
        ground = full(self.ground_size)
        if 0 not in self.opens or ground not in self.opens:
            return False
        if any(u & ~ground for u in self.opens):
            return False
        ops = list(self.opens)
        return all((a & b) in self.opens and (a | b) in self.opens for a in ops for b in ops)

    def sorted_opens(self) -> list[list[int]]:
        return sorted((members(u) for u in self.opens), key=lambda m: (len(m), m))


def _check_ground(n: int) -> None:
    if n > GROUND_CAP:
        raise GroundTooLarge(n, GROUND_CAP)


def union_closure(ground_size: int, base: Iterable[ElementSet]) -> Topology:
    """All unions of members of ``base`` (plus the empty union)."""
    opens = {0}
    for b in set(base):
        opens |= {o | b for o in opens}
    return Topology(ground_size, frozenset(opens))


def from_min_nbhds(ground_size: int, nbhds: Iterable[ElementSet]) -> Topology:
    """Topology whose minimal neighbourhoods are ``nbhds`` (must be consistent)."""
    return union_closure(ground_size, nbhds)


def generate_from_subbase(ground_size: int, subbase: Iterable[ElementSet]) -> Topology:
    """Smallest topology containing ``subbase``.

    Instead of listing every finite intersection, build the base of minimal
    neighbourhoods: for each point, the intersection of all subbase members
    containing it (the empty intersection being the full ground set). Every
    finite intersection of subbase members is a union of these, so the union
    closure is the same topology.
    """
    _check_ground(ground_size)
    ground = full(ground_size)
    nbhd = [ground] * ground_size
    for s in subbase:
        if s & ~ground:
            raise BadIndex(f"subbase member {members(s)} leaves the ground set of size {ground_size}")
        for x in members(s):
            nbhd[x] &= s
    return union_closure(ground_size, nbhd)


class Separation(NamedTuple):
    t1: bool
    hausdorff: bool
    discrete: bool


def separation_report(t: Topology) -> Separation:
    mn = t.min_nbhds
    n = t.ground_size
    t1 = all(mn[x] == 1 << x for x in range(n))
    hausdorff = all(mn[x] & mn[y] == 0 for x in range(n) for y in range(x + 1, n))
    discrete = all((1 << x) in t.opens for x in range(n))
    return Separation(t1, hausdorff, discrete)


class Comparison(str, Enum):
    EQUAL = "equal"
    STRICTLY_FINER = "strictly_finer"
    STRICTLY_COARSER = "strictly_coarser"
    INCOMPARABLE = "incomparable"


def compare(t1: Topology, t2: Topology) -> Comparison:
    """How ``t1`` relates to ``t2`` (``strictly_finer``: t1 has strictly more opens)."""
    if t1.ground_size != t2.ground_size:
        raise GroundMismatch(f"ground sizes differ: {t1.ground_size} vs {t2.ground_size}")
    a, b = t1.opens, t2.opens
    if a == b:
        return Comparison.EQUAL
    if a > b:
        return Comparison.STRICTLY_FINER
    if a < b:
        return Comparison.STRICTLY_COARSER
    return Comparison.INCOMPARABLE


class LocalStructure(NamedTuple):
    min_nbhd: ElementSet
    closure_of_singleton: ElementSet


def local_structure(t: Topology, x: int) -> LocalStructure:
    if not (isinstance(x, int) and 0 <= x < t.ground_size):
        raise BadIndex(f"point {x!r} not in 0..{t.ground_size - 1}")
    avoid = 0
    for u in t.opens:
        if not u >> x & 1:
            avoid |= u
    return LocalStructure(t.min_nbhds[x], full(t.ground_size) & ~avoid)


def discrete(n: int) -> Topology:
    _check_ground(n)
    return Topology(n, frozenset(range(1 << n)))


def indiscrete(n: int) -> Topology:
    return Topology(n, frozenset({0, full(n)}))


# -- text dump ---------------------------------------------------------------


def dump(t: Topology) -> str:
    """Ground size on the first line, then one open set per line as ``[i, j, ...]``."""
    lines = [str(t.ground_size)]
    lines += ["[" + ", ".join(map(str, m)) + "]" for m in t.sorted_opens()]
    return "\n".join(lines) + "\n"


def parse_dump(text: str) -> Topology:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    try:
        n = int(lines[0])
        opens = set()
        for ln in lines[1:]:
            if not (ln.startswith("[") and ln.endswith("]")):
                raise ValueError(ln)
            body = ln[1:-1].strip()
            idx = [int(tok) for tok in body.split(",")] if body else []
            m = 0
            for i in idx:
                if not 0 <= i < n:
                    raise BadIndex(f"index {i} outside ground set of size {n}")
                m |= 1 << i
            opens.add(m)
    except (IndexError, ValueError) as exc:
        raise OrdTopError(f"malformed topology dump: {exc}") from None
    return Topology(n, frozenset(opens))

"""Finite partially ordered sets on the ground set ``0..n-1``.

The order is stored as two tuples of bitmasks, ``up[x]`` (everything above
``x``) and ``down[x]`` (everything below ``x``), both reflexive.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence

from .bitset import ElementSet, full, iter_bits, mask, members
from .errors import BadIndex, CycleDetected, OrdTopError


class Direction(str, Enum):
    DOWN = "down"
    UP = "up"


@dataclass(frozen=True)
class FinitePoset:
    size: int
    up: tuple[int, ...]
    down: tuple[int, ...]
    labels: Optional[tuple[str, ...]] = field(default=None, compare=False)

    @classmethod
    def from_covers(
        cls,
        n: int,
        covers: Iterable[tuple[int, int]],
        labels: Optional[Sequence[str]] = None,
    ) -> "FinitePoset":
        """Reflexive-transitive closure of ``covers``; ``(i, j)`` means ``i <= j``."""
        if n < 0:
            raise BadIndex(f"negative element count {n}")
        up = [1 << i for i in range(n)]
        for i, j in covers:
            for e in (i, j):
                if not (isinstance(e, int) and 0 <= e < n):
                    raise BadIndex(f"cover pair ({i}, {j}) references index outside 0..{n - 1}")
            up[i] |= 1 << j
        # Warshall on bit rows.
        for k in range(n):
            bit = 1 << k
            row = up[k]
            for i in range(n):
                if up[i] & bit:
                    up[i] |= row
        down = [0] * n
        for x in range(n):
            for y in iter_bits(up[x]):
                down[y] |= 1 << x
        for x in range(n):
            both = up[x] & down[x] & ~(1 << x)
            if both:
                raise CycleDetected(x, next(iter_bits(both)))
        if labels is not None:
            if len(labels) != n:
                raise BadIndex(f"expected {n} labels, got {len(labels)}")
            labels = tuple(labels)
        return cls(n, tuple(up), tuple(down), labels)

    @classmethod
    def from_relation(cls, matrix: Sequence[Sequence[bool]]) -> "FinitePoset":
        n = len(matrix)
        covers = [(i, j) for i in range(n) for j in range(n) if i != j and matrix[i][j]]
        p = cls.from_covers(n, covers)
        if p.relation() != [[bool(v) for v in row] for row in matrix]:
            raise OrdTopError("relation matrix is not reflexive and transitive")
        return p

    # -- basic queries -----------------------------------------------------

    @property
    def ground(self) -> ElementSet:
        return full(self.size)

    def check(self, x: int) -> int:
        if not (isinstance(x, int) and 0 <= x < self.size):
            raise BadIndex(f"element {x!r} not in 0..{self.size - 1}")
        return x

    def __contains__(self, x) -> bool:
        return isinstance(x, int) and not isinstance(x, bool) and 0 <= x < self.size

    def leq(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def relation(self) -> list[list[bool]]:
        return [[self.leq(x, y) for y in range(self.size)] for x in range(self.size)]

    def covers(self) -> list[tuple[int, int]]:
        """Hasse edges ``(x, y)`` with ``x < y`` and nothing strictly between."""
        out = []
        for x in range(self.size):
            strict_up = self.up[x] & ~(1 << x)
            for y in iter_bits(strict_up):
                between = strict_up & self.down[y] & ~(1 << y)
                if not between:
                    out.append((x, y))
        return out

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)


# -- construction ----------------------------------------------------------


def chain(k: int) -> FinitePoset:
    return FinitePoset.from_covers(k, [(i, i + 1) for i in range(k - 1)])


def antichain(k: int) -> FinitePoset:
    return FinitePoset.from_covers(k, [])


def powerset(k: int) -> FinitePoset:
    """Subsets of a k-set under inclusion; element ``i`` is the subset with bitmask ``i``."""
    n = 1 << k
    covers = [(i, i | (1 << b)) for i in range(n) for b in range(k) if not i >> b & 1]
    labels = ["{" + ",".join(chr(ord("a") + b) for b in range(k) if i >> b & 1) + "}" for i in range(n)]
    return FinitePoset.from_covers(n, covers, labels)


def n5() -> FinitePoset:
    # 0 < a < b < 1 and 0 < c < 1
    return FinitePoset.from_covers(
        5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)], ["0", "a", "b", "c", "1"]
    )


def m3() -> FinitePoset:
    return FinitePoset.from_covers(
        5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], ["0", "a", "b", "c", "1"]
    )


def random_poset(n: int, seed: int, p: float = 0.3) -> FinitePoset:
    """Random poset: each pair ``i < j`` becomes a relation with probability ``p``."""
    rng = random.Random(seed)
    covers = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return FinitePoset.from_covers(n, covers)


_FAMILIES = {"chain": chain, "antichain": antichain, "powerset": powerset}
_NAMED = re.compile(r"(chain|antichain|powerset)(\d+)")


def named(name: str) -> FinitePoset:
    """Named family: ``chainK``, ``antichainK``, ``powersetK``, ``n5`` or ``m3``."""
    key = name.strip().lower()
    if key == "n5":
        return n5()
    if key == "m3":
        return m3()
    m = _NAMED.fullmatch(key)
    if not m:
        raise KeyError(name)
    return _FAMILIES[m.group(1)](int(m.group(2)))


def build_poset(source) -> FinitePoset:
    """Build from a family name, or a mapping with ``n``, ``covers`` and optional ``labels``."""
    if isinstance(source, str):
        return named(source)
    return FinitePoset.from_covers(
        source["n"], [tuple(c) for c in source.get("covers", [])], source.get("labels")
    )


# -- order-theoretic operations -------------------------------------------


def principal_set(p: FinitePoset, x: int, dir: Direction | str) -> ElementSet:
    p.check(x)
    return p.down[x] if Direction(dir) is Direction.DOWN else p.up[x]


def bounds(p: FinitePoset, s: ElementSet, dir: str) -> ElementSet:
    """Upper (``dir="upper"``) or lower bounds of ``s``; bounds of the empty set are everything."""
    if dir not in ("upper", "lower"):
        raise ValueError(f"dir must be 'upper' or 'lower', not {dir!r}")
    rows = p.up if dir == "upper" else p.down
    out = p.ground
    for x in iter_bits(s):
        out &= rows[x]
    return out


def extremum(p: FinitePoset, s: ElementSet, dir: str) -> Optional[int]:
    """Infimum or supremum of ``s``, or ``None`` when it does not exist.

    ``inf`` is the largest lower bound, so ``inf(empty)`` is the top element
    when there is one; ``sup`` is dual.
    """
    if dir == "inf":
        cand = bounds(p, s, "lower")
        dominated = p.down
    elif dir == "sup":
        cand = bounds(p, s, "upper")
        dominated = p.up
    else:
        raise ValueError(f"dir must be 'inf' or 'sup', not {dir!r}")
    for m in iter_bits(cand):
        if cand & ~dominated[m] == 0:
            return m
    return None


def top(p: FinitePoset) -> Optional[int]:
    return extremum(p, 0, "inf")


def bottom(p: FinitePoset) -> Optional[int]:
    return extremum(p, 0, "sup")


def meet(p: FinitePoset, x: int, y: int) -> Optional[int]:
    return extremum(p, (1 << x) | (1 << y), "inf")


def join(p: FinitePoset, x: int, y: int) -> Optional[int]:
    return extremum(p, (1 << x) | (1 << y), "sup")


# -- lattice classification -------------------------------------------------


class LatticeKind(str, Enum):
    NOT_LATTICE = "not_lattice"
    LATTICE = "lattice"
    DISTRIBUTIVE = "distributive_lattice"
    BOOLEAN = "boolean_algebra"


@dataclass(frozen=True)
class LatticeClassification:
    kind: LatticeKind
    atoms: ElementSet = 0
    coatoms: ElementSet = 0
    complement_map: Optional[dict[int, int]] = None


def lattice_classify(p: FinitePoset) -> LatticeClassification:
    n = p.size
    if n == 0:
        return LatticeClassification(LatticeKind.NOT_LATTICE)
    mt = [[meet(p, x, y) for y in range(n)] for x in range(n)]
    jn = [[join(p, x, y) for y in range(n)] for x in range(n)]
    if any(v is None for row in mt + jn for v in row):
        return LatticeClassification(LatticeKind.NOT_LATTICE)

    bot, tp = bottom(p), top(p)
    atoms = mask(y for y in range(n) if y != bot and p.down[y] == (1 << y) | (1 << bot))
    coatoms = mask(y for y in range(n) if y != tp and p.up[y] == (1 << y) | (1 << tp))

    distributive = all(
        mt[x][jn[y][z]] == jn[mt[x][y]][mt[x][z]]
        for x in range(n)
        for y in range(n)
        for z in range(n)
    )
    if not distributive:
        return LatticeClassification(LatticeKind.LATTICE, atoms, coatoms)

    complement: dict[int, int] = {}
    for x in range(n):
        for y in range(n):
            if mt[x][y] == bot and jn[x][y] == tp:
                complement[x] = y
                break
        else:
            return LatticeClassification(LatticeKind.DISTRIBUTIVE, atoms, coatoms)
    return LatticeClassification(LatticeKind.BOOLEAN, atoms, coatoms, complement)


def element_names(p: FinitePoset, s: ElementSet) -> list[str]:
    return [p.label(x) for x in members(s)]

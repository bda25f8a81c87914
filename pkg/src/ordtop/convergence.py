"""Filter convergence on finite sets and the order-convergence topology.

On a finite set every filter is principal: it is the family of all supersets
of its core (the intersection of its members). Filters are therefore handled
through their cores, encoded as nonempty bitmasks. A filter with core ``A``
is a super-filter of the one with core ``B`` exactly when ``A ⊆ B``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .bitset import GROUND_CAP, ElementSet, full, iter_bits, members, popcount
from .errors import BadIndex, EmptyCore, GroundMismatch, GroundTooLarge, TooLargeForExhaustive
from .poset import FinitePoset, bounds, extremum
from .topology import Topology, from_min_nbhds, separation_report

EXHAUSTIVE_CAP = 3


@dataclass(frozen=True, order=True)
class PrincipalFilter:
    ground_size: int
    core: ElementSet

    def __post_init__(self):
        if self.core == 0:
            raise EmptyCore("a filter core must be nonempty")
        if self.core & ~full(self.ground_size):
            raise BadIndex(f"core {members(self.core)} leaves ground set of size {self.ground_size}")

    def __contains__(self, s: ElementSet) -> bool:
        return self.core & ~s == 0

    @property
    def is_ultrafilter(self) -> bool:
        return popcount(self.core) == 1


def point_filter(n: int, x: int) -> PrincipalFilter:
    return PrincipalFilter(n, 1 << x)


def _check_ground(n: int) -> None:
    if n > GROUND_CAP:
        raise GroundTooLarge(n, GROUND_CAP)


def enumerate_filters(ground_size: int) -> list[PrincipalFilter]:
    if ground_size < 1:
        raise BadIndex("ground set must be nonempty")
    _check_ground(ground_size)
    return [PrincipalFilter(ground_size, a) for a in range(1, 1 << ground_size)]


@dataclass(frozen=True)
class ConvergenceRelation:
    """Closed convergence relation; ``limits[A]`` is the limit set of the filter with core ``A``.

    Index 0 is unused (there is no empty core) and always holds 0. Build
    through :func:`convergence_closure`, which establishes the two laws.
    """

    ground_size: int
    limits: tuple[ElementSet, ...] = field(repr=False)

    def limits_of(self, core: ElementSet) -> ElementSet:
        return self.limits[core]

    def pairs(self) -> Iterator[tuple[ElementSet, int]]:
        for core in range(1, len(self.limits)):
            for x in iter_bits(self.limits[core]):
                yield core, x

    def as_dict(self) -> dict[tuple[int, ...], list[int]]:
        return {tuple(members(a)): members(self.limits[a]) for a in range(1, len(self.limits))}

    def is_closed(self) -> bool:
        n = self.ground_size
        if any(not self.limits[1 << x] >> x & 1 for x in range(n)):
            return False
        for a in range(1, 1 << n):
            for b in range(1, 1 << n):
                if a & ~b == 0 and self.limits[b] & ~self.limits[a]:
                    return False
        return True


def _close(n: int, limits: list[int]) -> tuple[int, ...]:
    for x in range(n):
        limits[1 << x] |= 1 << x
    # Push limits from each core to all of its nonempty subsets, one bit at a time.
    for b in range(n):
        bit = 1 << b
        for a in range(1, 1 << n):
            if not a & bit:
                limits[a] |= limits[a | bit]
    limits[0] = 0
    return tuple(limits)


def convergence_closure(
    ground_size: int, raw: Iterable[tuple[ElementSet, int]]
) -> ConvergenceRelation:
    """Smallest convergence relation containing the ``(core, limit)`` pairs in ``raw``."""
    if ground_size < 1:
        raise BadIndex("ground set must be nonempty")
    _check_ground(ground_size)
    n = ground_size
    limits = [0] * (1 << n)
    for core, x in raw:
        if core == 0:
            raise EmptyCore("a filter core must be nonempty")
        if core & ~full(n) or not (0 <= x < n):
            raise BadIndex(f"pair ({members(core)}, {x}) outside ground set of size {n}")
        limits[core] |= 1 << x
    return ConvergenceRelation(n, _close(n, limits))


def close_relation(c: ConvergenceRelation) -> ConvergenceRelation:
    return ConvergenceRelation(c.ground_size, _close(c.ground_size, list(c.limits)))


def minimal_convergence(n: int) -> ConvergenceRelation:
    return convergence_closure(n, [])


def convergence_neighbourhoods(c: ConvergenceRelation) -> tuple[ElementSet, ...]:
    """Minimal open neighbourhood of each point in the induced topology.

    ``U`` is open iff every core converging to a point of ``U`` lies inside
    ``U``; so ``U`` must contain ``need[x]``, the union of those cores, for
    each of its points, and the minimal neighbourhood is the closure of
    ``{x}`` under ``need``.
    """
    n = c.ground_size
    need = [1 << x for x in range(n)]
    for core, x in c.pairs():
        need[x] |= core
    nbhd = []
    for x in range(n):
        reach = need[x]
        frontier = reach
        while frontier:
            grown = reach
            for y in iter_bits(frontier):
                grown |= need[y]
            frontier = grown & ~reach
            reach = grown
        nbhd.append(reach)
    return tuple(nbhd)


def induced_topology(c: ConvergenceRelation) -> Topology:
    return from_min_nbhds(c.ground_size, convergence_neighbourhoods(c))


def unique_limits(c: ConvergenceRelation) -> bool:
    return all(popcount(lim) <= 1 for lim in c.limits)


@dataclass(frozen=True)
class Fact22Result:
    holds: bool
    witness: Optional[tuple[ElementSet, int]] = None


def fact22_check(c: ConvergenceRelation) -> Fact22Result:
    """Does every filter containing all open neighbourhoods of ``x`` converge to ``x``?

    A filter with core ``A`` contains every open set around ``x`` iff
    ``A`` lies inside the minimal neighbourhood of ``x``. The first failure
    in (core, point) order is returned as the witness.
    """
    n = c.ground_size
    mn = induced_topology(c).min_nbhds
    for core in range(1, 1 << n):
        for x in range(n):
            if core & ~mn[x] == 0 and not c.limits[core] >> x & 1:
                return Fact22Result(False, (core, x))
    return Fact22Result(True)


# -- order convergence -----------------------------------------------------


def _match(p: FinitePoset, f: PrincipalFilter) -> None:
    if f.ground_size != p.size:
        raise GroundMismatch(f"filter on {f.ground_size} points, poset has {p.size}")


def filter_bounds(p: FinitePoset, f: PrincipalFilter, dir: str) -> ElementSet:
    """Union of the bound sets of all filter members.

    Every member contains the core, so its bounds are a subset of the core's
    bounds, and the core itself is a member: the union is the core's bounds.
    """
    _match(p, f)
    return bounds(p, f.core, dir)


def order_limit(p: FinitePoset, f: PrincipalFilter) -> Optional[int]:
    """The unique point ``f`` order-converges to, if any."""
    _match(p, f)
    x = extremum(p, filter_bounds(p, f, "upper"), "inf")
    if x is None:
        return None
    y = extremum(p, filter_bounds(p, f, "lower"), "sup")
    return x if x == y else None


def order_converges(p: FinitePoset, f: PrincipalFilter, x: int) -> bool:
    p.check(x)
    return order_limit(p, f) == x


def order_convergence(p: FinitePoset) -> ConvergenceRelation:
    _check_ground(p.size)
    n = p.size
    raw = []
    for core in range(1, 1 << n):
        lim = order_limit(p, PrincipalFilter(n, core))
        if lim is not None:
            raw.append((core, lim))
    return convergence_closure(n, raw)


def order_topology(p: FinitePoset) -> Topology:
    return induced_topology(order_convergence(p))


# -- exploring Hausdorff vs unique limits ----------------------------------


@dataclass
class ExplorationReport:
    n: int
    mode: str
    samples: Optional[int]
    seed: Optional[int]
    q: Optional[float]
    spaces_checked: int = 0
    distinct_spaces: int = 0
    dir1_violations: int = 0
    dir2_violations: int = 0
    fact22_violations: int = 0
    example_witnesses: dict[str, list[dict]] = field(
        default_factory=lambda: {"dir1": [], "dir2": [], "fact22": []}
    )

    def to_dict(self) -> dict:
        return {
            "parameters": {
                "n": self.n,
                "mode": self.mode,
                "samples": self.samples,
                "seed": self.seed,
                "q": self.q,
            },
            "counts": {
                "spaces_checked": self.spaces_checked,
                "distinct_spaces": self.distinct_spaces,
                "dir1_violations": self.dir1_violations,
                "dir2_violations": self.dir2_violations,
                "fact22_violations": self.fact22_violations,
            },
            "witnesses": self.example_witnesses,
        }


MAX_WITNESSES = 5


def _downsets_containing(n: int, x: int) -> list[ElementSet]:
    """Families of cores (as bitmasks over core indices) that are closed under
    nonempty subsets and contain the core ``{x}``."""
    cores = range(1, 1 << n)
    point = 1 << x
    out = []
    for fam in range(1 << (1 << n)):
        if fam & 1 or not fam >> point & 1:
            continue
        ok = True
        for a in cores:
            if fam >> a & 1:
                sub = (a - 1) & a
                while sub:
                    if not fam >> sub & 1:
                        ok = False
                        break
                    sub = (sub - 1) & a
                if not ok:
                    break
        if ok:
            out.append(fam)
    return out


def closed_relations(n: int) -> Iterator[ConvergenceRelation]:
    """Every closed convergence relation on ``n`` points, each exactly once.

    A closed relation is determined, point by point, by the family of cores
    converging to that point; these families are exactly the subset-closed
    families containing the point filter's core.
    """
    if n > EXHAUSTIVE_CAP:
        raise TooLargeForExhaustive(f"exhaustive exploration is capped at n={EXHAUSTIVE_CAP}")
    per_point = [_downsets_containing(n, x) for x in range(n)]
    for choice in itertools.product(*per_point):
        limits = [0] * (1 << n)
        for x, fam in enumerate(choice):
            for a in iter_bits(fam):
                limits[a] |= 1 << x
        yield ConvergenceRelation(n, tuple(limits))


def random_relation(n: int, rng: random.Random, q: float) -> ConvergenceRelation:
    raw = [(a, x) for a in range(1, 1 << n) for x in range(n) if rng.random() < q]
    return convergence_closure(n, raw)


def _describe(c: ConvergenceRelation, violated: str, extra: Optional[dict] = None) -> dict:
    d = {
        "relation": {",".join(map(str, k)): v for k, v in c.as_dict().items()},
        "violated": violated,
    }
    if extra:
        d.update(extra)
    return d


def explore_prop23(
    ground_size: int,
    mode: str = "exhaustive",
    samples: int = 0,
    seed: int = 0,
    q: float = 0.25,
) -> ExplorationReport:
    """Compare unique limits with Hausdorffness of the induced topology.

    ``dir1`` counts relations with unique limits whose topology is not
    Hausdorff; ``dir2`` counts Hausdorff topologies whose relation has some
    filter with several limits. Spaces where a filter holding every open
    neighbourhood of x fails to converge to x are tallied alongside.
    """
    if mode == "exhaustive":
        relations: Iterable[ConvergenceRelation] = closed_relations(ground_size)
        rep = ExplorationReport(ground_size, mode, None, None, None)
    elif mode == "sampled":
        _check_ground(ground_size)
        rng = random.Random(seed)
        relations = (random_relation(ground_size, rng, q) for _ in range(samples))
        rep = ExplorationReport(ground_size, mode, samples, seed, q)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    seen: set[tuple[int, ...]] = set()
    found: dict[str, dict[tuple[int, ...], dict]] = {"dir1": {}, "dir2": {}, "fact22": {}}
    for c in relations:
        rep.spaces_checked += 1
        # Violations are tallied per distinct space, not per draw.
        if c.limits in seen:
            continue
        seen.add(c.limits)
        unique = unique_limits(c)
        hausdorff = separation_report(induced_topology(c)).hausdorff
        if unique and not hausdorff:
            rep.dir1_violations += 1
            found["dir1"][c.limits] = _describe(c, "unique limits but not Hausdorff")
        if hausdorff and not unique:
            rep.dir2_violations += 1
            found["dir2"][c.limits] = _describe(c, "Hausdorff but limits not unique")
        f22 = fact22_check(c)
        if not f22.holds:
            rep.fact22_violations += 1
            core, x = f22.witness
            found["fact22"][c.limits] = _describe(
                c, "filter holding every neighbourhood fails to converge",
                {"core": members(core), "point": x},
            )
    rep.distinct_spaces = len(seen)
    for key, table in found.items():
        rep.example_witnesses[key] = [table[k] for k in sorted(table)[:MAX_WITNESSES]]
    return rep

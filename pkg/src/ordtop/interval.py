"""Interval topology: complements of principal down-sets and up-sets as a subbase.

For a finite poset the topology is materialized. For the infinite free
algebra only membership in a finitely generated basic closed set
``I ∪ F`` is computed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, NamedTuple, Protocol, Sequence

from .cantor import BoolTerm, leq as term_leq
from .convergence import order_topology
from .errors import CarrierMismatch
from .poset import FinitePoset
from .topology import Comparison, Topology, compare, generate_from_subbase


class Carrier(Protocol):
    def leq(self, a: Any, b: Any) -> bool: ...

    def __contains__(self, z: Any) -> bool: ...


class CantorCarrier:
    """Order interface of the free algebra, for :func:`basic_closed_contains`."""

    def leq(self, a: BoolTerm, b: BoolTerm) -> bool:
        return term_leq(a, b)

    def __contains__(self, z: Any) -> bool:
        return isinstance(z, BoolTerm)

    def __repr__(self) -> str:
        return "CANTOR"


CANTOR = CantorCarrier()


@dataclass(frozen=True)
class GeneratorSets:
    """Finite generators of an order ideal (``ideal_gens``) and an order filter (``filter_gens``)."""

    ideal_gens: tuple
    filter_gens: tuple

    def __init__(self, ideal_gens: Sequence, filter_gens: Sequence):
        object.__setattr__(self, "ideal_gens", tuple(ideal_gens))
        object.__setattr__(self, "filter_gens", tuple(filter_gens))


class Membership(NamedTuple):
    in_ideal: bool
    in_filter: bool


def basic_closed_contains(gens: GeneratorSets, z, carrier: Carrier = CANTOR) -> Membership:
    """Whether ``z`` lies in the ideal generated by ``ideal_gens`` and/or the
    filter generated by ``filter_gens``. A down-set only needs one generator
    above ``z``; joins of generators are not involved."""
    for e in (z, *gens.ideal_gens, *gens.filter_gens):
        if e not in carrier:
            raise CarrierMismatch(f"{e!r} is not an element of {carrier!r}")
    return Membership(
        any(carrier.leq(z, x) for x in gens.ideal_gens),
        any(carrier.leq(y, z) for y in gens.filter_gens),
    )


def interval_subbase(p: FinitePoset) -> list[int]:
    ground = p.ground
    return [ground & ~p.down[x] for x in range(p.size)] + [ground & ~p.up[x] for x in range(p.size)]


def interval_topology(p: FinitePoset) -> Topology:
    return generate_from_subbase(p.size, interval_subbase(p))


class OrderVsInterval(NamedTuple):
    relation: Comparison
    order: Topology
    interval: Topology


def compare_order_vs_interval(p: FinitePoset) -> OrderVsInterval:
    """Compare the order topology against the interval topology (order first)."""
    tau_o = order_topology(p)
    tau_i = interval_topology(p)
    return OrderVsInterval(compare(tau_o, tau_i), tau_o, tau_i)

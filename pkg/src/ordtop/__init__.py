"""Interval and order-convergence topologies on finite posets, and an escaping
element construction in the free atomless Boolean algebra showing that the
interval topology there cannot separate 0 from 1."""

from .bitset import mask, members
from .cantor import ONE, ZERO, BoolTerm, SubalgebraBasis, parse_term, format_term
from .convergence import (
    ConvergenceRelation,
    PrincipalFilter,
    convergence_closure,
    enumerate_filters,
    explore_prop23,
    fact22_check,
    induced_topology,
    order_converges,
    order_topology,
    unique_limits,
)
from .interval import GeneratorSets, basic_closed_contains, compare_order_vs_interval, interval_topology
from .poset import FinitePoset, build_poset, lattice_classify
from .topology import Topology, compare, generate_from_subbase, separation_report
from .witness import WitnessReport, fuzz_refute, relativized_witness, separation_witness, validate_candidate

__version__ = "0.1.0"

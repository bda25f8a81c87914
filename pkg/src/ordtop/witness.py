"""Escaping elements for finitely generated closed covers in the free algebra.

A candidate separation of 0 from 1 in the interval topology consists of a
proper finitely generated order ideal ``C0 = ↓X`` (containing 0, not 1) and
a proper finitely generated order filter ``C1 = ↑Y`` (containing 1, not 0).
The construction below always finds ``W`` outside ``C0 ∪ C1``:

1. take the atoms ``v_i`` of the finite subalgebra generated by ``X ∪ Y``
   and their complements ``u_i``;
2. split every atom, ``0 < w_i < v_i``, using a distinct fresh generator;
3. ``W`` is the join of the ``w_i``.

Then ``v_i ∧ W = w_i < v_i`` so no atom lies below ``W``, and ``w_j ≤ W``
with ``w_j ≰ u_j`` so ``W`` lies below no coatom. Every ``x ∈ X`` sits
below a coatom and every ``y ∈ Y`` above an atom, hence ``W ∉ C0 ∪ C1``.

The same steps run inside an interval ``[a, b]`` with ``a`` as zero, ``b``
as one and ``z ↦ a ∨ (b ∧ ¬z)`` as complement.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

from .cantor import ONE, ZERO, BoolTerm, SubalgebraBasis, canonical_order, leq, max_support, random_term, var
from .errors import InvalidCandidate, NotAnInterval, PreconditionError, VerificationFailed
from .interval import GeneratorSets, basic_closed_contains


class Rejection(str, Enum):
    EMPTY_GENERATORS = "EmptyGenerators"
    IDEAL_CONTAINS_TOP = "IdealContainsTop"
    FILTER_CONTAINS_BOTTOM = "FilterContainsBottom"
    OUTSIDE_INTERVAL = "GeneratorOutsideInterval"

    def __str__(self) -> str:
        return self.value


_EXPLANATIONS = {
    Rejection.EMPTY_GENERATORS: "both the ideal and the filter need at least one generator",
    Rejection.IDEAL_CONTAINS_TOP: "an ideal generator equals the top, so the ideal is not proper",
    Rejection.FILTER_CONTAINS_BOTTOM: "a filter generator equals the bottom, so the filter is not proper",
    Rejection.OUTSIDE_INTERVAL: "every generator must lie in the interval [a, b]",
}


def explain(reason: Rejection) -> str:
    return _EXPLANATIONS[reason]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool


@dataclass(frozen=True)
class WitnessReport:
    input: GeneratorSets
    basis: SubalgebraBasis
    splits: tuple[BoolTerm, ...]
    witness: BoolTerm
    checks: tuple[Check, ...]
    valid: bool
    bottom: BoolTerm = ZERO
    top: BoolTerm = ONE

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        def fmt(ts):
            return [str(t) for t in ts]

        return {
            "interval": {"bottom": str(self.bottom), "top": str(self.top)},
            "ideal": fmt(self.input.ideal_gens),
            "filter": fmt(self.input.filter_gens),
            "atoms": fmt(self.basis.atoms),
            "coatoms": fmt(self.basis.coatoms),
            "splits": fmt(self.splits),
            "witness": str(self.witness),
            "checks": [{"name": c.name, "passed": c.passed} for c in self.checks],
            "valid": self.valid,
        }


def validate_candidate(gens: GeneratorSets) -> Optional[Rejection]:
    """``None`` if the cover satisfies the separation hypotheses, else the reason it does not."""
    if not gens.ideal_gens or not gens.filter_gens:
        return Rejection.EMPTY_GENERATORS
    if any(x.is_one for x in gens.ideal_gens):
        return Rejection.IDEAL_CONTAINS_TOP
    if any(y.is_zero for y in gens.filter_gens):
        return Rejection.FILTER_CONTAINS_BOTTOM
    return None


def _dedupe(terms: Iterable[BoolTerm]) -> list[BoolTerm]:
    seen: set[BoolTerm] = set()
    out = []
    for t in terms:
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


def _construct(a: BoolTerm, b: BoolTerm, gens: GeneratorSets) -> WitnessReport:
    X, Y = gens.ideal_gens, gens.filter_gens
    Z = _dedupe((*X, *Y))

    def rel_complement(z: BoolTerm) -> BoolTerm:
        return a | (b & ~z)

    def rel_join(terms: Iterable[BoolTerm]) -> BoolTerm:
        out = a
        for t in terms:
            out = out | t
        return out

    cells = [b]
    for z in Z:
        zc = rel_complement(z)
        cells = [part for c in cells for part in (c & z, c & zc) if part != a]
    cells = canonical_order(cells, base=a)
    coatoms = [rel_complement(v) for v in cells]
    basis = SubalgebraBasis(tuple(Z), tuple(cells), tuple(coatoms))

    fresh = max_support([a, b, *Z]) + 1
    mass = b & ~a
    splits = [a | (v & mass & var(fresh + i)) for i, v in enumerate(cells)]
    W = rel_join(splits)

    checks: list[Check] = []

    def check(name: str, ok: bool) -> None:
        checks.append(Check(name, bool(ok)))

    p = len(cells)
    check(
        "atoms pairwise disjoint",
        all((cells[i] & cells[j]) == a for i in range(p) for j in range(i + 1, p)),
    )
    check("atoms join to top", rel_join(cells) == b)
    for k, z in enumerate(Z):
        check(f"generator {k} is the join of the atoms below it",
              rel_join(v for v in cells if leq(v, z)) == z)
    for i in range(p):
        others = rel_join(cells[j] for j in range(p) if j != i)
        check(f"u[{i}] is the join of the other atoms", coatoms[i] == others)
    for i, (v, w) in enumerate(zip(cells, splits)):
        check(f"bottom < w[{i}] < v[{i}]", w != a and w != v and leq(a, w) and leq(w, v))
    for i, (v, w) in enumerate(zip(cells, splits)):
        check(f"v[{i}] & W = w[{i}]", (v & W) == w)
        check(f"v[{i}] not <= W", not leq(v, W))
    for j, (u, w) in enumerate(zip(coatoms, splits)):
        check(f"w[{j}] <= W and w[{j}] not <= u[{j}]", leq(w, W) and not leq(w, u))
        check(f"W not <= u[{j}]", not leq(W, u))
    for k, x in enumerate(X):
        check(f"ideal generator {k} lies below some coatom", any(leq(x, u) for u in coatoms))
    for k, y in enumerate(Y):
        check(f"filter generator {k} lies above some atom", any(leq(v, y) for v in cells))
    for k, x in enumerate(X):
        check(f"W not <= ideal generator {k}", not leq(W, x))
    for k, y in enumerate(Y):
        check(f"W not >= filter generator {k}", not leq(y, W))
    check("bottom < W < top", leq(a, W) and leq(W, b) and W != a and W != b)
    check("W outside the cover", basic_closed_contains(gens, W) == (False, False))

    return WitnessReport(
        input=gens,
        basis=basis,
        splits=tuple(splits),
        witness=W,
        checks=tuple(checks),
        valid=all(c.passed for c in checks),
        bottom=a,
        top=b,
    )


def _finish(report: WitnessReport, strict: bool) -> WitnessReport:
    if strict and not report.valid:
        raise VerificationFailed(report.failed()[0].name, report)
    return report


def separation_witness(gens: GeneratorSets, strict: bool = True) -> WitnessReport:
    """Build and verify an element outside ``↓X ∪ ↑Y``.

    Raises :class:`InvalidCandidate` if the cover is not a proper candidate
    and, when ``strict``, :class:`VerificationFailed` if any self-check fails.
    """
    reason = validate_candidate(gens)
    if reason is not None:
        raise InvalidCandidate(reason, explain(reason))
    return _finish(_construct(ZERO, ONE, gens), strict)


def relativized_witness(
    a: BoolTerm, b: BoolTerm, gens: GeneratorSets, strict: bool = True
) -> WitnessReport:
    """The same construction inside the interval ``[a, b]``."""
    if not leq(a, b) or a == b:
        raise NotAnInterval(f"need a < b, got a={a}, b={b}")
    if not gens.ideal_gens or not gens.filter_gens:
        reason = Rejection.EMPTY_GENERATORS
    elif not all(leq(a, z) and leq(z, b) for z in (*gens.ideal_gens, *gens.filter_gens)):
        reason = Rejection.OUTSIDE_INTERVAL
    elif any(x == b for x in gens.ideal_gens):
        reason = Rejection.IDEAL_CONTAINS_TOP
    elif any(y == a for y in gens.filter_gens):
        reason = Rejection.FILTER_CONTAINS_BOTTOM
    else:
        reason = None
    if reason is not None:
        raise InvalidCandidate(reason, explain(reason))
    return _finish(_construct(a, b, gens), strict)


# -- fuzzing -----------------------------------------------------------------


@dataclass
class FuzzSummary:
    trials_run: int = 0
    valid_witnesses: int = 0
    rejected_candidates: int = 0
    failures: int = 0
    failure_details: list[dict] = field(default_factory=list)
    reports: list[WitnessReport] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "trials_run": self.trials_run,
            "valid_witnesses": self.valid_witnesses,
            "rejected_candidates": self.rejected_candidates,
            "failures": self.failures,
            "failure_details": self.failure_details,
        }


def random_candidate(rng: random.Random, max_gens: int, max_depth: int, max_var: int) -> GeneratorSets:
    X = [random_term(max_depth, max_var, rng, nonconstant=True) for _ in range(rng.randint(1, max_gens))]
    Y = [random_term(max_depth, max_var, rng, nonconstant=True) for _ in range(rng.randint(1, max_gens))]
    return GeneratorSets(X, Y)


def fuzz_refute(
    trials: int,
    max_gens: int = 4,
    max_depth: int = 4,
    max_var: int = 4,
    seed: int = 0,
    keep_reports: bool = False,
) -> FuzzSummary:
    """Run the witness construction on random candidates.

    Trial ``i`` draws from its own generator seeded by ``(seed, i)``, so a
    single trial can be replayed without the ones before it.
    """
    for name, value in (("trials", trials), ("max_gens", max_gens),
                        ("max_depth", max_depth), ("max_var", max_var)):
        if value < 1:
            raise PreconditionError(f"{name} must be at least 1, got {value}")
    out = FuzzSummary()
    for i in range(trials):
        rng = random.Random(f"{seed}:{i}")
        gens = random_candidate(rng, max_gens, max_depth, max_var)
        out.trials_run += 1
        if validate_candidate(gens) is not None:
            out.rejected_candidates += 1
            continue
        report = _construct(ZERO, ONE, gens)
        if report.valid:
            out.valid_witnesses += 1
        else:
            out.failures += 1
            out.failure_details.append({
                "trial": i,
                "ideal": [str(t) for t in gens.ideal_gens],
                "filter": [str(t) for t in gens.filter_gens],
                "failed": [c.name for c in report.failed()],
            })
        if keep_reports:
            out.reports.append(report)
    return out

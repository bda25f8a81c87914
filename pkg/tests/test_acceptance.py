"""Acceptance criteria, one test per criterion, each reporting one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline; they
are also repeated in the terminal summary under "acceptance criteria".
"""
import itertools
import json
import random
import time

import pytest

from ordtop import cantor
from ordtop.bitset import members, popcount
from ordtop.cantor import ONE, ZERO, join_all, leq, parse_term, random_formula, random_term, split, support
from ordtop.cli import main
from ordtop.convergence import (
    PrincipalFilter,
    convergence_closure,
    fact22_check,
    minimal_convergence,
    order_convergence,
    order_converges,
    order_topology,
    point_filter,
)
from ordtop.interval import GeneratorSets, basic_closed_contains, compare_order_vs_interval, interval_topology
from ordtop.poset import antichain, chain, m3, n5, powerset, random_poset
from ordtop.topology import Comparison, separation_report
from ordtop.witness import fuzz_refute, separation_witness

from _oracles import formula_vars, glb, lub, truth_vector

P = parse_term


def _posets():
    out = [(f"chain{k}", chain(k)) for k in range(1, 7)]
    out += [(f"antichain{k}", antichain(k)) for k in range(1, 7)]
    out += [(f"powerset{k}", powerset(k)) for k in range(0, 4)]
    out += [("n5", n5()), ("m3", m3())]
    for seed in range(100):
        n = random.Random(f"size:{seed}").randint(1, 10)
        out.append((f"random{seed}(n={n})", random_poset(n, seed)))
    return out


POSETS = _posets()


def _cli(capsys, *argv):
    code = main([*argv, "--output", "machine"])
    out, _ = capsys.readouterr()
    return code, json.loads(out)


def _singletons_open(t) -> bool:
    return all(t.is_open(1 << x) for x in range(t.ground_size))


# -- 1-3: finite posets ---------------------------------------------------------------


def test_criterion_1_finite_discreteness(acceptance):
    start = time.perf_counter()
    bad = []
    for name, p in POSETS:
        ti, to = interval_topology(p), order_topology(p)
        full = 1 << p.size
        ok = (
            len(ti.opens) == full
            and len(to.opens) == full
            and _singletons_open(ti)
            and _singletons_open(to)
            and compare_order_vs_interval(p).relation is Comparison.EQUAL
        )
        if not ok:
            bad.append(name)
    elapsed = time.perf_counter() - start
    acceptance(
        "1 interval and order topologies discrete and equal",
        not bad and elapsed < 60,
        f"{len(POSETS)} posets, {len(bad)} exceptions {bad[:3]}, {elapsed:.1f}s < 60s",
    )


def test_criterion_2_order_topology_hausdorff(acceptance):
    bad = []
    for name, p in POSETS:
        t = order_topology(p)
        # Disjoint open singletons separate any two points.
        if not (separation_report(t).hausdorff and _singletons_open(t)):
            bad.append(name)
    acceptance("2 order topology Hausdorff", not bad, f"{len(POSETS)} posets, {len(bad)} exceptions {bad[:3]}")


def test_criterion_3_order_limits_unique(acceptance):
    bad = []
    for name, p in POSETS:
        n = p.size
        elems = range(n)
        rel = [[p.leq(x, y) for y in elems] for x in elems]
        le = lambda x, y: rel[x][y]
        for core in range(1, 1 << n):
            s = members(core)
            ups = [x for x in elems if all(le(a, x) for a in s)]
            lows = [x for x in elems if all(le(x, a) for a in s)]
            # Reference limit: inf of the upper bounds equal to sup of the lower bounds.
            i, j = glb(elems, le, ups), lub(elems, le, lows)
            expected = {i} if i is not None and i == j else set()
            f = PrincipalFilter(n, core)
            got = {x for x in elems if order_converges(p, f, x)}
            if len(got) > 1 or got != expected:
                bad.append((name, core))
        for x in range(n):
            if not order_converges(p, point_filter(n, x), x):
                bad.append((name, f"P_{x}"))
    acceptance("3 order limits unique and P_x -> x", not bad, f"{len(POSETS)} posets, {len(bad)} exceptions {bad[:3]}")


# -- 4-5: witness engine ----------------------------------------------------------------


def test_criterion_4_witness_engine(acceptance, capsys):
    start = time.perf_counter()
    code, doc = _cli(
        capsys, "ba", "fuzz", "--trials", "1000", "--max-gens", "4", "--max-depth", "4", "--max-var", "4", "--seed", "42"
    )
    elapsed = time.perf_counter() - start
    fuzz_ok = (
        code == 0
        and doc["trials_run"] == 1000
        and doc["failures"] == 0
        and doc["valid_witnesses"] == doc["trials_run"] - doc["rejected_candidates"]
    )

    ex1 = separation_witness(GeneratorSets([P("~v0")], [P("v0")])).to_dict()
    ex1_ok = (
        ex1["atoms"] == ["v0", "~v0"]
        and ex1["splits"] == ["v0 & v1", "~v0 & v2"]
        and P(ex1["witness"]) == P("(v0 & v1) | (~v0 & v2)")
        and ex1["valid"]
        and all(c["passed"] for c in ex1["checks"])
    )
    ex2 = separation_witness(GeneratorSets([ZERO], [ONE]))
    ex2_ok = (
        ex2.basis.atoms == (ONE,)
        and ex2.splits == (cantor.var(0),)
        and ex2.witness == cantor.var(0)
        and not leq(ex2.witness, ZERO)
        and not leq(ONE, ex2.witness)
        and ex2.valid
    )
    ex3 = separation_witness(GeneratorSets([P("~v0"), P("~v1")], [P("v0 & v1")]))
    minterms = {P(s) for s in ("v0 & v1", "v0 & ~v1", "~v0 & v1", "~v0 & ~v1")}
    fresh = sorted(v for w in ex3.splits for v in support(w) - {0, 1})
    ex3_ok = (
        set(ex3.basis.atoms) == minterms
        and fresh == [2, 3, 4, 5]
        and ex3.witness == join_all(ex3.splits)
        and basic_closed_contains(ex3.input, ex3.witness) == (False, False)
        and ex3.valid
    )
    acceptance(
        "4 witness engine: fuzz clean and worked examples exact",
        fuzz_ok and elapsed < 10 and ex1_ok and ex2_ok and ex3_ok,
        f"failures={doc['failures']} rejected={doc['rejected_candidates']} valid={doc['valid_witnesses']}, "
        f"{elapsed:.2f}s < 10s, examples={ex1_ok},{ex2_ok},{ex3_ok}",
    )


def test_criterion_5_proof_step_invariants(acceptance):
    summary = fuzz_refute(1000, max_gens=4, max_depth=4, max_var=4, seed=42, keep_reports=True)
    reports = summary.reports
    violations = []
    for k, rep in enumerate(reports):
        V = rep.basis.atoms
        U = [~v for v in V]
        X, Y = rep.input.ideal_gens, rep.input.filter_gens
        W = rep.witness
        checks = {
            "disjoint": all(a & b == ZERO for a, b in itertools.combinations(V, 2)),
            "join is 1": join_all(V) == ONE,
            "0 < w_i < v_i": all(ZERO < w < v for v, w in zip(V, rep.splits)) and len(rep.splits) == len(V),
            "W is the join": W == join_all(rep.splits),
            "v_i not <= W": all(not leq(v, W) for v in V),
            "W not <= u_j": all(not leq(W, u) for u in U),
            "C0 in D0": all(any(leq(x, u) for u in U) for x in X),
            "C1 in D1": all(any(leq(v, y) for v in V) for y in Y),
            "W outside C0 u C1": not any(leq(W, x) for x in X) and not any(leq(y, W) for y in Y),
        }
        violations += [(k, name) for name, ok in checks.items() if not ok]
    acceptance(
        "5 proof-step invariants on fuzzed candidates",
        len(reports) == 1000 and not violations,
        f"{len(reports)} reports, {len(violations)} violations {violations[:3]}",
    )


# -- 6-7: convergence spaces -----------------------------------------------------------------


def test_criterion_6_unique_limits_vs_hausdorff(acceptance, capsys):
    code2, ex = _cli(capsys, "convergence", "explore", "--n", "2")
    code3, sm = _cli(capsys, "convergence", "explore", "--n", "3", "--samples", "10000", "--seed", "7")
    c2, c3 = ex["counts"], sm["counts"]
    ok = (
        code2 == 0
        and code3 == 0
        and ex["parameters"]["mode"] == "exhaustive"
        and sm["parameters"]["mode"] == "sampled"
        and c2["dir1_violations"] == c2["dir2_violations"] == 0
        and c3["dir1_violations"] == c3["dir2_violations"] == 0
    )
    acceptance(
        "6 unique limits iff Hausdorff on finite sweeps",
        ok,
        f"n=2: {c2['spaces_checked']} spaces dir1={c2['dir1_violations']} dir2={c2['dir2_violations']}; "
        f"n=3: {c3['spaces_checked']} samples dir1={c3['dir1_violations']} dir2={c3['dir2_violations']}",
    )


def test_criterion_7_neighbourhood_convergence_calibration(acceptance):
    closed = convergence_closure(2, [(0b10, 0)])
    res = fact22_check(closed)
    calibrated = not res.holds and res.witness == (0b11, 0)
    minimal_ok = all(fact22_check(minimal_convergence(n)).holds for n in range(1, 4))
    bad = [name for name, p in POSETS if not fact22_check(order_convergence(p)).holds]
    acceptance(
        "7 neighbourhood-convergence checker calibrated",
        calibrated and minimal_ok and not bad,
        f"closure of P_1->0 witness={res.witness}, minimal n<=3 hold={minimal_ok}, "
        f"{len(POSETS)} order relations, {len(bad)} exceptions",
    )


# -- 8: algebra kernel --------------------------------------------------------------------------


def test_criterion_8_kernel_laws(acceptance):
    start = time.perf_counter()
    rng = random.Random(8)
    law_fail = 0
    for _ in range(10_000):
        x, y, z = (random_term(4, 6, rng) for _ in range(3))
        ok = (
            x & (y | z) == (x & y) | (x & z)
            and x | (y & z) == (x | y) & (x | z)
            and ~(x & y) == ~x | ~y
            and ~(x | y) == ~x & ~y
            and x & (x | y) == x
            and x | (x & y) == x
            and ~~x == x
        )
        law_fail += not ok

    canon_fail = equal_pairs = 0
    for _ in range(10_000):
        # Few variables make semantically equal pairs common enough to matter.
        nv = rng.choice((1, 2, 2, 3, 3, 4, 6, 8, 12))
        depth = rng.randint(1, 5)
        f1, f2 = random_formula(depth, nv, rng), random_formula(depth, nv, rng)
        vs = sorted(formula_vars(f1) | formula_vars(f2))
        assert len(vs) <= 12
        semantic = truth_vector(f1, vs) == truth_vector(f2, vs)
        equal_pairs += semantic
        canon_fail += semantic != (P(f1) == P(f2))

    split_fail = 0
    for _ in range(10_000):
        b = random_term(4, 6, rng)
        if b == ZERO:
            b = ~b
        split_fail += not (ZERO < split(b) < b)

    elapsed = time.perf_counter() - start
    acceptance(
        "8 algebra kernel laws, canonicity and split strictness",
        law_fail == canon_fail == split_fail == 0 and elapsed < 30,
        f"laws {law_fail}/10000, canonicity {canon_fail}/10000 ({equal_pairs} equal pairs), "
        f"split {split_fail}/10000, {elapsed:.1f}s < 30s",
    )

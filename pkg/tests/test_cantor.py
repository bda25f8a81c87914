import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordtop.cantor import (
    ONE,
    ZERO,
    BoolTerm,
    apply,
    evaluate,
    format_term,
    join_all,
    leq,
    parse_term,
    random_formula,
    random_term,
    split,
    subalgebra_atoms,
    support,
    var,
)
from ordtop.errors import ArityMismatch, ExhaustedRejection, SplitOfZero, TermSyntaxError

from _oracles import compile_formula, formula_vars, semantically_equal

P = parse_term

seeds = st.integers(0, 2**32 - 1)


def formula(seed, depth=4, nvars=4):
    return random_formula(depth, nvars, random.Random(seed))


# -- parsing and formatting --------------------------------------------------------


def test_parse_examples():
    assert P("~~v0") == P("v0")
    assert P("v0 & ~v0") == ZERO
    assert P("~(v0 & v1)") == P("(~v0 | ~v1)")
    assert P(" v12|0 ") == var(12)


def test_precedence_and_associativity():
    assert P("v0 | v1 & v2") == P("v0 | (v1 & v2)")
    assert P("~v0 & v1") == P("(~v0) & v1")
    assert P("v0 & v1 & v2") == P("(v0 & v1) & v2")


@pytest.mark.parametrize(
    "text, pos",
    [("v0 &", 4), ("(v0 | v1", 8), ("v", 1), ("v0 v1", 3), ("", 0), ("x", 0), ("v0 + v1", 3)],
)
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(TermSyntaxError) as info:
        P(text)
    assert info.value.position == pos


@given(seeds)
def test_format_parse_roundtrip(seed):
    t = P(formula(seed, depth=5, nvars=5))
    assert P(format_term(t)) == t
    assert format_term(P(format_term(t))) == format_term(t)


@given(seeds)
def test_parse_agrees_with_truth_table(seed):
    text = formula(seed, depth=5, nvars=5)
    t = P(text)
    f = compile_formula(text)
    vs = sorted(formula_vars(text))
    for bits in itertools.product((False, True), repeat=len(vs)):
        a = dict(zip(vs, bits))
        assert evaluate(t, a) == f(a)


# -- operations ---------------------------------------------------------------------


def test_apply_examples():
    v0 = var(0)
    assert apply("meet", v0, ~v0) == ZERO
    assert apply("join", v0, ONE) == ONE
    assert apply("meet", P("v0 | v1"), apply("complement", v0)) == P("~v0 & v1")
    with pytest.raises(ArityMismatch):
        apply("meet", v0)
    with pytest.raises(ArityMismatch):
        apply("complement", v0, v0)


def test_leq_examples():
    assert leq(P("v0 & v1"), var(0))
    assert not leq(var(0), var(1))
    assert leq(ZERO, P("v3 | ~v7"))
    assert var(0) < ONE and not (ONE < ONE) and ONE >= var(5)


@given(seeds, seeds, seeds)
def test_boolean_laws(s1, s2, s3):
    x, y, z = (random_term(4, 4, s) for s in (s1, s2, s3))
    assert x & (y | z) == (x & y) | (x & z)
    assert x | (y & z) == (x | y) & (x | z)
    assert ~(x & y) == ~x | ~y
    assert ~(x | y) == ~x & ~y
    assert ~~x == x
    assert x & (x | y) == x
    assert x | (x & y) == x
    assert (x & y) & z == x & (y & z)
    assert x & ~x == ZERO and x | ~x == ONE


@given(seeds, seeds)
def test_canonicity(s1, s2):
    f1, f2 = formula(s1, 3, 3), formula(s2, 3, 3)
    assert (P(f1) == P(f2)) == semantically_equal(f1, f2)


@given(seeds, seeds)
def test_leq_antisymmetric(s1, s2):
    a, b = random_term(3, 3, s1), random_term(3, 3, s2)
    if leq(a, b) and leq(b, a):
        assert a == b


def test_support():
    assert support(P("v0 & v3 | v0 & ~v3")) == {0}
    assert support(ONE) == frozenset()
    assert support(P("v2 | v5")) == {2, 5}


# -- atomlessness ----------------------------------------------------------------------


def test_split_examples():
    assert split(ONE) == var(0)
    w = split(var(0))
    assert w == P("v0 & v1")
    assert ZERO < w < var(0)
    with pytest.raises(SplitOfZero):
        split(ZERO)
    with pytest.raises(ValueError):
        split(var(0), fresh=0)


@given(seeds)
def test_split_strict_and_chain(seed):
    b = random_term(4, 4, seed, nonconstant=True)
    for _ in range(5):
        w = split(b)
        assert ZERO < w < b
        b = w


# -- subalgebras ------------------------------------------------------------------------


def _minterm_oracle(gens):
    out = set()
    for signs in itertools.product((True, False), repeat=len(gens)):
        m = ONE
        for g, s in zip(gens, signs):
            m = m & (g if s else ~g)
        if m != ZERO:
            out.add(m)
    return out


def test_subalgebra_examples():
    assert subalgebra_atoms([var(0)]).atoms == (var(0), ~var(0))
    assert subalgebra_atoms([var(0), var(1)]).atoms == tuple(
        P(s) for s in ("v0 & v1", "v0 & ~v1", "~v0 & v1", "~v0 & ~v1")
    )
    assert subalgebra_atoms([var(0), P("v0 & v1")]).atoms == (P("v0 & v1"), P("v0 & ~v1"), ~var(0))


@settings(max_examples=80)
@given(st.lists(seeds, min_size=1, max_size=5))
def test_subalgebra_invariants(ss):
    gens = [random_term(4, 4, s) for s in ss]
    basis = subalgebra_atoms(gens)
    atoms = basis.atoms
    assert set(atoms) == _minterm_oracle(gens)
    assert len(atoms) <= 2 ** len(gens)
    assert all(a != ZERO for a in atoms)
    assert all(a & b == ZERO for a, b in itertools.combinations(atoms, 2))
    assert join_all(atoms) == ONE
    for g in gens:
        assert join_all(a for a in atoms if leq(a, g)) == g
    assert basis.coatoms == tuple(~a for a in atoms)
    # Atom order does not depend on generator order.
    assert subalgebra_atoms(list(reversed(gens))).atoms == atoms


# -- random terms ------------------------------------------------------------------------


def test_random_term_deterministic():
    assert random_term(4, 4, 1) == random_term(4, 4, 1)
    assert random_formula(4, 4, random.Random(1)) == random_formula(4, 4, random.Random(1))


@given(seeds)
def test_random_term_nonconstant(seed):
    t = random_term(3, 2, seed, nonconstant=True)
    assert t not in (ZERO, ONE)


def test_depth_one_terms():
    allowed = {var(0), ~var(0), ZERO, ONE}
    seen = {random_term(1, 1, s) for s in range(300)}
    assert seen == allowed


def _depth(text):
    # Every operator above a literal is parenthesized, so depth = max nesting + 1.
    best = depth = 0
    for ch in text:
        if ch == "(":
            depth += 1
            best = max(best, depth)
        elif ch == ")":
            depth -= 1
    return best + 1


@given(seeds, st.integers(1, 6))
def test_random_formula_depth_bound(seed, d):
    assert _depth(random_formula(d, 3, random.Random(seed))) <= d


def test_exhausted_rejection(monkeypatch):
    import ordtop.cantor as c

    monkeypatch.setattr(c, "random_formula", lambda *a: "v0 & ~v0")
    with pytest.raises(ExhaustedRejection):
        c.random_term(2, 2, 0, nonconstant=True)


def test_handles_are_values():
    assert BoolTerm(var(3).node) == var(3)
    assert hash(P("v1 | v2")) == hash(P("v2 | v1"))
    assert repr(var(1)) == "BoolTerm('v1')"

"""The free Boolean algebra on countably many generators ``v0, v1, ...``.

Elements are reduced ordered binary decision diagrams over the generator
indices (smaller index tested first), hash-consed in one process-wide node
table, so two terms denote the same element iff they share a node id. The
algebra is countable and atomless (every nonzero element can be split by a
generator it does not mention), but not complete.
"""
from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import ArityMismatch, ExhaustedRejection, SplitOfZero, TermSyntaxError

_FALSE, _TRUE = 0, 1
_TERMINAL_VAR = 1 << 30


class _NodeTable:
    """Append-only unique table.

    Node ids index ``nodes``; ids 0 and 1 are the terminals. Lookups are
    lock-free; insert-if-absent happens under a lock.
    """

    def __init__(self) -> None:
        self.nodes: list[tuple[int, int, int]] = [
            (_TERMINAL_VAR, _FALSE, _FALSE),
            (_TERMINAL_VAR, _TRUE, _TRUE),
        ]
        self.unique: dict[tuple[int, int, int], int] = {}
        self.lock = threading.Lock()
        self.and_cache: dict[tuple[int, int], int] = {}
        self.not_cache: dict[int, int] = {}

    def mk(self, var: int, lo: int, hi: int) -> int:
        if lo == hi:
            return lo
        key = (var, lo, hi)
        nid = self.unique.get(key)
        if nid is not None:
            return nid
        with self.lock:
            nid = self.unique.get(key)
            if nid is None:
                nid = len(self.nodes)
                self.nodes.append(key)
                self.unique[key] = nid
        return nid

    def neg(self, u: int) -> int:
        if u <= _TRUE:
            return 1 - u
        r = self.not_cache.get(u)
        if r is None:
            var, lo, hi = self.nodes[u]
            r = self.mk(var, self.neg(lo), self.neg(hi))
            self.not_cache[u] = r
        return r

    def conj(self, u: int, w: int) -> int:
        if u == _FALSE or w == _FALSE:
            return _FALSE
        if u == _TRUE:
            return w
        if w == _TRUE or u == w:
            return u
        if u > w:
            u, w = w, u
        key = (u, w)
        r = self.and_cache.get(key)
        if r is not None:
            return r
        vu, lu, hu = self.nodes[u]
        vw, lw, hw = self.nodes[w]
        if vu == vw:
            r = self.mk(vu, self.conj(lu, lw), self.conj(hu, hw))
        elif vu < vw:
            r = self.mk(vu, self.conj(lu, w), self.conj(hu, w))
        else:
            r = self.mk(vw, self.conj(u, lw), self.conj(u, hw))
        self.and_cache[key] = r
        return r

    def disj(self, u: int, w: int) -> int:
        return self.neg(self.conj(self.neg(u), self.neg(w)))


_TABLE = _NodeTable()


@dataclass(frozen=True)
class BoolTerm:
    """Handle on a canonical node. Equality is identity of the node."""

    node: int

    def __and__(self, other: "BoolTerm") -> "BoolTerm":
        return BoolTerm(_TABLE.conj(self.node, other.node))

    def __or__(self, other: "BoolTerm") -> "BoolTerm":
        return BoolTerm(_TABLE.disj(self.node, other.node))

    def __invert__(self) -> "BoolTerm":
        return BoolTerm(_TABLE.neg(self.node))

    def __le__(self, other: "BoolTerm") -> bool:
        return leq(self, other)

    def __ge__(self, other: "BoolTerm") -> bool:
        return leq(other, self)

    def __lt__(self, other: "BoolTerm") -> bool:
        return self != other and leq(self, other)

    def __gt__(self, other: "BoolTerm") -> bool:
        return self != other and leq(other, self)

    @property
    def is_zero(self) -> bool:
        return self.node == _FALSE

    @property
    def is_one(self) -> bool:
        return self.node == _TRUE

    def __str__(self) -> str:
        return format_term(self)

    def __repr__(self) -> str:
        return f"BoolTerm({format_term(self)!r})"


ZERO = BoolTerm(_FALSE)
ONE = BoolTerm(_TRUE)


def var(i: int) -> BoolTerm:
    if i < 0:
        raise ValueError(f"generator index must be nonnegative, got {i}")
    return BoolTerm(_TABLE.mk(i, _FALSE, _TRUE))


def apply(op: str, a: BoolTerm, b: Optional[BoolTerm] = None) -> BoolTerm:
    if op == "complement":
        if b is not None:
            raise ArityMismatch("complement takes one operand")
        return ~a
    if op in ("meet", "join"):
        if b is None:
            raise ArityMismatch(f"{op} takes two operands")
        return a & b if op == "meet" else a | b
    raise ValueError(f"unknown operation {op!r}")


def meet_all(terms: Iterable[BoolTerm]) -> BoolTerm:
    out = ONE
    for t in terms:
        out = out & t
    return out


def join_all(terms: Iterable[BoolTerm]) -> BoolTerm:
    out = ZERO
    for t in terms:
        out = out | t
    return out


def leq(a: BoolTerm, b: BoolTerm) -> bool:
    return (a & b) == a


def support(t: BoolTerm) -> frozenset[int]:
    """Generator indices the element depends on."""
    seen: set[int] = set()
    out: set[int] = set()
    stack = [t.node]
    nodes = _TABLE.nodes
    while stack:
        u = stack.pop()
        if u <= _TRUE or u in seen:
            continue
        seen.add(u)
        v, lo, hi = nodes[u]
        out.add(v)
        stack.append(lo)
        stack.append(hi)
    return frozenset(out)


def max_support(terms: Iterable[BoolTerm]) -> int:
    """Largest generator index mentioned by any of ``terms``, or -1."""
    return max((max(support(t), default=-1) for t in terms), default=-1)


def evaluate(t: BoolTerm, assignment: Mapping[int, bool] | Sequence[bool]) -> bool:
    u = t.node
    nodes = _TABLE.nodes
    while u > _TRUE:
        v, lo, hi = nodes[u]
        u = hi if assignment[v] else lo
    return u == _TRUE


def split(b: BoolTerm, fresh: Optional[int] = None) -> BoolTerm:
    """An element strictly between 0 and ``b``.

    Meets ``b`` with a generator it does not depend on, by default the one
    just past its largest support index. Passing ``fresh`` picks the
    generator explicitly; it must lie outside ``support(b)``.
    """
    if b.is_zero:
        raise SplitOfZero("0 has nothing strictly below it")
    sup = support(b)
    if fresh is None:
        fresh = max(sup, default=-1) + 1
    elif fresh in sup:
        raise ValueError(f"v{fresh} occurs in the term being split")
    return b & var(fresh)


def max_model(t: BoolTerm, nvars: int) -> tuple[int, ...]:
    """Lexicographically largest satisfying assignment over ``v0..v(nvars-1)``
    (``v0`` most significant). ``t`` must be nonzero."""
    if t.is_zero:
        raise ValueError("0 has no satisfying assignment")
    bits = [1] * nvars
    u = t.node
    nodes = _TABLE.nodes
    while u > _TRUE:
        v, lo, hi = nodes[u]
        if hi != _FALSE:
            u = hi
        else:
            bits[v] = 0
            u = lo
    return tuple(bits)


def canonical_order(cells: Sequence[BoolTerm], base: Optional[BoolTerm] = None) -> list[BoolTerm]:
    """Sort pairwise disjoint nonzero elements by descending :func:`max_model`.

    With ``base``, the cells are disjoint above ``base`` and are keyed on
    ``c & ~base`` instead.
    """
    keyed = cells if base is None else [c & ~base for c in cells]
    n = max_support(keyed) + 1
    order = sorted(range(len(cells)), key=lambda i: max_model(keyed[i], n), reverse=True)
    return [cells[i] for i in order]


@dataclass(frozen=True)
class SubalgebraBasis:
    generators: tuple[BoolTerm, ...]
    atoms: tuple[BoolTerm, ...]
    coatoms: tuple[BoolTerm, ...]


def subalgebra_atoms(generators: Sequence[BoolTerm]) -> SubalgebraBasis:
    """Atoms and coatoms of the finite subalgebra generated by ``generators``.

    Atoms are the nonzero minterms: refine the partition ``[1]`` by each
    generator in turn, dropping empty cells. They are listed in
    :func:`canonical_order`, so the result does not depend on the order of
    ``generators``.
    """
    cells = [ONE]
    for z in generators:
        nz = ~z
        refined = []
        for c in cells:
            for part in (c & z, c & nz):
                if not part.is_zero:
                    refined.append(part)
        cells = refined
    cells = canonical_order(cells)
    return SubalgebraBasis(tuple(generators), tuple(cells), tuple(~c for c in cells))


# -- text form -------------------------------------------------------------
#
# term  := term "|" term2 | term2
# term2 := term2 "&" term3 | term3
# term3 := "~" term3 | "0" | "1" | VAR | "(" term ")"
# VAR   := "v" DIGITS


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def error(self, msg: str) -> TermSyntaxError:
        return TermSyntaxError(msg, self.text, self.pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> BoolTerm:
        t = self.disjunction()
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return t

    def disjunction(self) -> BoolTerm:
        t = self.conjunction()
        while self.peek() == "|":
            self.pos += 1
            t = t | self.conjunction()
        return t

    def conjunction(self) -> BoolTerm:
        t = self.unary()
        while self.peek() == "&":
            self.pos += 1
            t = t & self.unary()
        return t

    def unary(self) -> BoolTerm:
        c = self.peek()
        if c == "~":
            self.pos += 1
            return ~self.unary()
        if c == "0":
            self.pos += 1
            return ZERO
        if c == "1":
            self.pos += 1
            return ONE
        if c == "(":
            self.pos += 1
            t = self.disjunction()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return t
        if c == "v":
            start = self.pos + 1
            end = start
            while end < len(self.text) and self.text[end].isdigit():
                end += 1
            if end == start:
                self.pos = start
                raise self.error("expected generator index after 'v'")
            self.pos = end
            return var(int(self.text[start:end]))
        if not c:
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {c!r}")


def parse_term(text: str) -> BoolTerm:
    return _Parser(text).parse()


# Precedence levels for formatting: or < and < atom.
_OR, _AND, _ATOM = 1, 2, 3


def _wrap(s: str, prec: int, need: int) -> str:
    return f"({s})" if prec < need else s


def _fmt(u: int, memo: dict[int, tuple[str, int]]) -> tuple[str, int]:
    if u == _FALSE:
        return "0", _ATOM
    if u == _TRUE:
        return "1", _ATOM
    if u in memo:
        return memo[u]
    v, lo, hi = _TABLE.nodes[u]
    pos, neg = f"v{v}", f"~v{v}"
    if lo == _FALSE and hi == _TRUE:
        out = pos, _ATOM
    elif lo == _TRUE and hi == _FALSE:
        out = neg, _ATOM
    elif lo == _FALSE:
        s, p = _fmt(hi, memo)
        out = f"{pos} & {_wrap(s, p, _AND)}", _AND
    elif hi == _FALSE:
        s, p = _fmt(lo, memo)
        out = f"{neg} & {_wrap(s, p, _AND)}", _AND
    elif hi == _TRUE:
        s, p = _fmt(lo, memo)
        out = f"{pos} | {s}", _OR
    elif lo == _TRUE:
        s, p = _fmt(hi, memo)
        out = f"{neg} | {s}", _OR
    else:
        sh, ph = _fmt(hi, memo)
        sl, pl = _fmt(lo, memo)
        out = f"{pos} & {_wrap(sh, ph, _AND)} | {neg} & {_wrap(sl, pl, _AND)}", _OR
    memo[u] = out
    return out


def format_term(t: BoolTerm) -> str:
    """Unambiguous text for ``t``; ``parse_term(format_term(t)) == t``."""
    return _fmt(t.node, {})[0]


# -- random terms ------------------------------------------------------------

MAX_REJECTIONS = 1000


def random_formula(max_depth: int, max_var: int, rng: random.Random) -> str:
    """Random formula text with syntax depth at most ``max_depth``.

    Depth 1 is a literal: a constant, a generator, or a negated generator.
    Each operator above a literal adds one level.
    """
    if max_depth < 1 or max_var < 1:
        raise ValueError("max_depth and max_var must be at least 1")
    if max_depth == 1 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.1:
            return rng.choice("01")
        v = f"v{rng.randrange(max_var)}"
        return f"~{v}" if r < 0.55 else v
    op = rng.choice("&|~")
    if op == "~":
        return f"~({random_formula(max_depth - 1, max_var, rng)})"
    left = random_formula(max_depth - 1, max_var, rng)
    right = random_formula(max_depth - 1, max_var, rng)
    return f"({left} {op} {right})"


def random_term(max_depth: int, max_var: int, seed: int | random.Random, nonconstant: bool = False) -> BoolTerm:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    for _ in range(MAX_REJECTIONS):
        t = parse_term(random_formula(max_depth, max_var, rng))
        if not nonconstant or not (t.is_zero or t.is_one):
            return t
    raise ExhaustedRejection(f"no nonconstant term after {MAX_REJECTIONS} draws")


def node_count() -> int:
    """Size of the shared node table (diagnostics)."""
    return len(_TABLE.nodes)

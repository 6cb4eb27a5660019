"""Bruhat intervals, Bruhat graphs, isomorphism tests and hypercube predicates."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .coxeter import CoxeterSystem, Element
from .errors import DomainError, EmptyIntervalError, PreconditionError, SizeError
from .intpoly import IntPoly
from . import iso

ISO_CAP = 64
CLUSTER_CAP = 12


# -- lower ideals ----------------------------------------------------------------
@lru_cache(maxsize=4096)
def _lower_ideal(system: CoxeterSystem, v: int) -> frozenset:
    # all subword products of the canonical word of v
    ids = {0}
    for s in system._words[v]:
        ids |= {system._rm(x, s) for x in ids}
    return frozenset(ids)


def lower_ideal(v: Element) -> list:
    """``[e, v]`` in (length, ShortLex) order."""
    sys = v.system
    return [sys.element(i) for i in sorted(_lower_ideal(sys, v.index))]


def _check_same(u, v):
    if u.system is not v.system:
        raise DomainError("elements belong to different systems")


@dataclass(frozen=True, eq=False)
class Interval:
    """The Bruhat interval ``[u, v]`` with its covering relation."""

    u: Element
    v: Element
    members: tuple
    hasse: tuple  # pairs (i, j) of member positions, i covered by j
    pos: dict = field(repr=False)

    @property
    def system(self) -> CoxeterSystem:
        return self.u.system

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def length(self) -> int:
        return self.v.length - self.u.length

    def rank(self, z: Element) -> int:
        return z.length - self.u.length

    def __contains__(self, z):
        return z in self.pos

    def rank_vector(self) -> tuple:
        counts = [0] * (self.length + 1)
        for z in self.members:
            counts[self.rank(z)] += 1
        return tuple(counts)

    def describe(self) -> str:
        sys = self.system
        return f"{sys.name}:[{sys.format_element(self.u) or 'e'},{sys.format_element(self.v) or 'e'}]"


def interval(u: Element, v: Element) -> Interval:
    _check_same(u, v)
    if not u.system.bruhat_leq(u, v):
        raise EmptyIntervalError(f"{u} is not below {v} in Bruhat order")
    return _interval(u.system, u.index, v.index)


@lru_cache(maxsize=8192)
def _interval(sys: CoxeterSystem, ui: int, vi: int) -> Interval:
    ideal = _lower_ideal(sys, vi)
    ids = sorted(z for z in ideal if sys._leq(ui, z))
    members = tuple(sys.element(i) for i in ids)
    pos = {z: k for k, z in enumerate(members)}
    edges = _graph_edges(sys, members)
    hasse = tuple((a, b) for a, b, _ in edges if members[b].length - members[a].length == 1)
    return Interval(sys.element(ui), sys.element(vi), members, hasse, pos)


def _graph_edges(sys: CoxeterSystem, members) -> list:
    if not members:
        return []
    top = max(z.length for z in members)
    refl = sys.reflection_ids(None if sys.finite else 2 * top)
    edges = []
    for a, x in enumerate(members):
        xinv = sys._inverse(x.index)
        for b, y in enumerate(members):
            if y.length <= x.length or (y.length - x.length) % 2 == 0:
                continue
            t = sys._mult(xinv, y.index)
            if t in refl:
                edges.append((a, b, t))
    return edges


# -- Bruhat graphs ---------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class BruhatGraph:
    """``B(u, v)``: edges ``x -> x*t`` labelled by the reflection ``t``."""

    interval: Interval
    edges: tuple  # (i, j, reflection element)

    @property
    def vertices(self):
        return self.interval.members

    def out_neighbors(self) -> list:
        out = [set() for _ in self.vertices]
        for a, b, _ in self.edges:
            out[a].add(b)
        return out

    def digraph(self) -> iso.Digraph:
        return iso.Digraph.from_edges(len(self.vertices), [(a, b) for a, b, _ in self.edges])


def bruhat_graph(u: Element, v: Element) -> BruhatGraph:
    I = interval(u, v)
    return _bruhat_graph(I)


@lru_cache(maxsize=4096)
def _bruhat_graph(I: Interval) -> BruhatGraph:
    sys = I.system
    edges = tuple((a, b, sys.element(t)) for a, b, t in _graph_edges(sys, I.members))
    return BruhatGraph(I, edges)


def rank_gf(u: Element, v: Element) -> IntPoly:
    return IntPoly(interval(u, v).rank_vector())


# -- finite posets ----------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class FinitePoset:
    """A finite subposet of Bruhat order (elements plus covering pairs)."""

    elements: tuple
    covers: tuple
    flags: tuple = None  # optional per-element colouring

    @property
    def size(self):
        return len(self.elements)

    def digraph(self) -> iso.Digraph:
        n = len(self.elements)
        below = [0] * n
        above = [0] * n
        out = [set() for _ in range(n)]
        inn = [set() for _ in range(n)]
        for a, b in self.covers:
            out[a].add(b)
            inn[b].add(a)
        # intrinsic initial colours: sizes of principal down/up sets
        down = [None] * n
        for k in _topological(n, inn):
            s = {k}
            for p in inn[k]:
                s |= down[p]
            down[k] = s
        for k in range(n):
            below[k] = len(down[k]) - 1
            for p in down[k]:
                if p != k:
                    above[p] += 1
        colors = [
            (below[k], above[k], self.flags[k] if self.flags is not None else 0) for k in range(n)
        ]
        return iso.Digraph(n, out, inn, colors)


def _topological(n, inn):
    seen, order = set(), []

    def visit(k):
        if k in seen:
            return
        seen.add(k)
        for p in inn[k]:
            visit(p)
        order.append(k)

    for k in range(n):
        visit(k)
    return order


def subposet(elements) -> FinitePoset:
    """Induced Bruhat order on an arbitrary finite set of elements."""
    elements = tuple(sorted(elements, key=lambda z: (z.length, z.index)))
    n = len(elements)
    sys = elements[0].system if elements else None
    less = [[a != b and sys._leq(elements[a].index, elements[b].index) for b in range(n)] for a in range(n)]
    covers = []
    for a in range(n):
        for b in range(n):
            if less[a][b] and not any(less[a][c] and less[c][b] for c in range(n)):
                covers.append((a, b))
    return FinitePoset(elements, tuple(covers))


def interval_poset(I: Interval, flags=None) -> FinitePoset:
    return FinitePoset(I.members, I.hasse, tuple(flags) if flags is not None else None)


@dataclass(frozen=True, eq=False)
class QuotientInterval:
    """``[u, v]`` with the members lying in ``W^J`` flagged."""

    interval: Interval
    J: frozenset
    flags: tuple

    @property
    def quotient_members(self) -> tuple:
        return tuple(z for z, f in zip(self.interval.members, self.flags) if f)

    def quotient_poset(self) -> FinitePoset:
        """``[u, v]^J`` as a poset in its own right."""
        return subposet(self.quotient_members)

    def flagged_poset(self) -> FinitePoset:
        """The full interval, coloured by quotient membership."""
        return interval_poset(self.interval, self.flags)


def quotient_interval(u: Element, v: Element, J) -> QuotientInterval:
    I = interval(u, v)
    J = frozenset(J)
    flags = tuple(u.system.in_quotient(z, J) for z in I.members)
    return QuotientInterval(I, J, flags)


def _as_poset(P) -> FinitePoset:
    if isinstance(P, FinitePoset):
        return P
    if isinstance(P, Interval):
        return interval_poset(P)
    if isinstance(P, QuotientInterval):
        return P.quotient_poset()
    raise TypeError(f"not a poset: {type(P).__name__}")


def _cap(*sizes, cap):
    if max(sizes) > cap:
        raise SizeError(f"poset of size {max(sizes)} exceeds isomorphism cap {cap}")


def enumerate_poset_isos(P1, P2, cap: int = ISO_CAP) -> Iterator[dict]:
    """Every order isomorphism ``P1 -> P2`` as a dict element -> element."""
    A, B = _as_poset(P1), _as_poset(P2)
    _cap(A.size, B.size, cap=cap)
    for f in iso.iter_isomorphisms(A.digraph(), B.digraph()):
        yield {A.elements[i]: B.elements[j] for i, j in enumerate(f)}


def poset_isomorphic(P1, P2, cap: int = ISO_CAP) -> bool:
    return next(enumerate_poset_isos(P1, P2, cap), None) is not None


def poset_invariant(P) -> tuple:
    return iso.invariant(_as_poset(P).digraph())


def digraph_isomorphic(B1: BruhatGraph, B2: BruhatGraph, cap: int = ISO_CAP) -> bool:
    _cap(len(B1.vertices), len(B2.vertices), cap=cap)
    return iso.isomorphic(B1.digraph(), B2.digraph())


# -- hypercube decompositions ------------------------------------------------------
def _member_positions(I: Interval, X) -> set:
    try:
        return {I.pos[x] for x in X}
    except KeyError as exc:
        raise PreconditionError(f"{exc.args[0]} is not in {I.describe()}") from None


def diamond_complete(u: Element, v: Element, X) -> bool:
    G = bruhat_graph(u, v)
    xs = _member_positions(G.interval, X)
    out = G.out_neighbors()
    for a in xs:
        nb = sorted(out[a] & xs)
        for b, c in combinations(nb, 2):
            for d in out[b] & out[c]:
                if d not in xs:
                    return False
    return True


def _antichains(items, comparable):
    items = list(items)

    def rec(start, chosen):
        yield list(chosen)
        for k in range(start, len(items)):
            if all(not comparable(items[k], c) for c in chosen):
                chosen.append(items[k])
                yield from rec(k + 1, chosen)
                chosen.pop()

    yield from rec(0, [])


def count_cube_embeddings(out: list, w: int, atoms: list, limit: int = 2) -> int:
    """Count embeddings of the subset cube of ``atoms`` sending {} to w, {a} to a.

    ``out`` is the out-adjacency of the target digraph. Counting stops at
    ``limit``.
    """
    k = len(atoms)
    masks = sorted(range(1 << k), key=lambda m: (bin(m).count("1"), m))
    theta = {0: w}
    for i, a in enumerate(atoms):
        theta[1 << i] = a
    if len(set(theta.values())) != len(theta):
        return 0
    free = [m for m in masks if bin(m).count("1") >= 2]
    used = set(theta.values())
    count = 0

    def rec(idx):
        nonlocal count
        if count >= limit:
            return
        if idx == len(free):
            count += 1
            return
        m = free[idx]
        cand = None
        for i in range(k):
            if m >> i & 1:
                nb = out[theta[m ^ (1 << i)]]
                cand = set(nb) if cand is None else cand & nb
                if not cand:
                    return
        for y in sorted(cand):
            if y in used:
                continue
            theta[m] = y
            used.add(y)
            rec(idx + 1)
            used.discard(y)
            del theta[m]
            if count >= limit:
                return

    for i, a in enumerate(atoms):
        if a not in out[w]:
            return 0
    rec(0)
    return count


def spans_hypercube_cluster(u: Element, v: Element, X, w: Element, cap: int = CLUSTER_CAP) -> bool:
    G = bruhat_graph(u, v)
    I = G.interval
    xs = _member_positions(I, X)
    if w not in I.pos or I.pos[w] not in xs:
        raise PreconditionError(f"{w} is not in X")
    wp = I.pos[w]
    out = G.out_neighbors()
    U = sorted(y for y in out[wp] if y not in xs)
    if len(U) > cap:
        raise SizeError(f"|U(w)| = {len(U)} exceeds cap {cap}")
    sys = I.system

    def comparable(a, b):
        x, y = I.members[a], I.members[b]
        return sys._leq(x.index, y.index) or sys._leq(y.index, x.index)

    for A in _antichains(U, comparable):
        if len(A) < 2:
            continue
        if count_cube_embeddings(out, wp, A) != 1:
            return False
    return True


def is_hypercube_decomposition(u: Element, v: Element, X, cap: int = CLUSTER_CAP) -> bool:
    X = set(X)
    if u not in X:
        raise PreconditionError("X must contain u")
    if v in X:
        raise PreconditionError("X must not contain v")
    I = interval(u, v)
    _member_positions(I, X)
    if not diamond_complete(u, v, X):
        return False
    return all(spans_hypercube_cluster(u, v, X, w, cap) for w in X)


def first_letter_set(u: Element, v: Element, by: str = "inverse") -> set:
    """``{w in [u, v] : w^-1(1) = u^-1(1)}`` for type A (``by="inverse"``).

    ``by="value"`` uses ``w(1) = u(1)`` instead.
    """
    sys = u.system
    if sys.tag != "A":
        raise DomainError("the first-letter decomposition is defined for type A only")
    I = interval(u, v)

    def key(z):
        win = sys.window(z)
        return win.index(1) if by == "inverse" else win[0]

    target = key(u)
    return {z for z in I.members if key(z) == target}

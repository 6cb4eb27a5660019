"""Isomorphism search for small directed graphs.

Colour refinement (iterated in/out neighbourhood colour multisets, run on
both graphs jointly so colours are comparable) followed by backtracking.
Posets are handled through their Hasse diagrams: a bijection preserves the
covering relation iff it preserves the order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


@dataclass
class Digraph:
    n: int
    out: list  # list of sets
    inn: list
    colors: list  # initial colours, any hashable values

    @classmethod
    def from_edges(cls, n, edges, colors=None):
        out = [set() for _ in range(n)]
        inn = [set() for _ in range(n)]
        for a, b in edges:
            out[a].add(b)
            inn[b].add(a)
        return cls(n, out, inn, list(colors) if colors is not None else [0] * n)

    @property
    def edge_count(self):
        return sum(len(s) for s in self.out)


def refine(graphs) -> list:
    """Stable joint colouring; returns one integer colour list per graph."""
    table = {c: i for i, c in enumerate(sorted({c for g in graphs for c in g.colors}))}
    cols = [[table[c] for c in g.colors] for g in graphs]
    ncls = -1
    while True:
        sigs = []
        for g, c in zip(graphs, cols):
            sigs.append([
                (c[v], tuple(sorted(c[w] for w in g.out[v])), tuple(sorted(c[w] for w in g.inn[v])))
                for v in range(g.n)
            ])
        ids = {s: i for i, s in enumerate(sorted({s for ss in sigs for s in ss}))}
        cols = [[ids[s] for s in ss] for ss in sigs]
        if len(ids) == ncls:
            return cols
        ncls = len(ids)


def _search_order(g: Digraph, col):
    size = {}
    for c in col:
        size[c] = size.get(c, 0) + 1
    order, placed = [], set()
    while len(order) < g.n:
        best, best_key = None, None
        for v in range(g.n):
            if v in placed:
                continue
            linked = sum(1 for w in g.out[v] | g.inn[v] if w in placed)
            key = (-linked, size[col[v]], col[v], v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        order.append(best)
        placed.add(best)
    return order


def iter_isomorphisms(g1: Digraph, g2: Digraph) -> Iterator[tuple]:
    """Yield every isomorphism ``g1 -> g2`` as a tuple ``f`` with ``f[v1] = v2``."""
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return
    c1, c2 = refine([g1, g2])
    if sorted(c1) != sorted(c2):
        return
    n = g1.n
    order = _search_order(g1, c1)
    by_color = {}
    for y in range(n):
        by_color.setdefault(c2[y], []).append(y)
    f = [-1] * n
    used = [False] * n

    def consistent(x, y):
        for p in g1.out[x]:
            if f[p] >= 0 and f[p] not in g2.out[y]:
                return False
        for p in g1.inn[x]:
            if f[p] >= 0 and f[p] not in g2.inn[y]:
                return False
        # non-edges must map to non-edges; counts of mapped neighbours suffice
        mo = sum(1 for p in g1.out[x] if f[p] >= 0)
        mi = sum(1 for p in g1.inn[x] if f[p] >= 0)
        ro = sum(1 for q in g2.out[y] if used[q])
        ri = sum(1 for q in g2.inn[y] if used[q])
        return mo == ro and mi == ri

    def rec(k):
        if k == n:
            yield tuple(f)
            return
        x = order[k]
        for y in by_color.get(c1[x], ()):
            if used[y] or not consistent(x, y):
                continue
            f[x] = y
            used[y] = True
            yield from rec(k + 1)
            f[x] = -1
            used[y] = False

    yield from rec(0)


def isomorphic(g1: Digraph, g2: Digraph) -> bool:
    return next(iter_isomorphisms(g1, g2), None) is not None


def invariant(g: Digraph) -> tuple:
    """Cheap isomorphism invariant (sorted refined colour histogram of ``g`` alone)."""
    (c,) = refine([g])
    sig = []
    for v in range(g.n):
        sig.append((c[v], tuple(sorted(c[w] for w in g.out[v]))))
    return (g.n, g.edge_count, tuple(sorted(sig)))

"""Simple graphs: canonical forms, chromatic and tau polynomials, acyclic orientations.

Vertices are ``0..p-1`` internally; the text format is 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from ..errors import ParseError, SizeError, ValidationError
from ..intpoly import ONE, IntPoly
from ..polylab.sturm import real_rooted
from ..report import failed, passed, stopwatch

PARTITION_CAP = 12
SCAN_CAP = 7


@dataclass(frozen=True)
class Graph:
    p: int
    edges: frozenset  # pairs (i, j) with i < j

    @classmethod
    def of(cls, p: int, edges=()) -> Graph:
        es = set()
        for a, b in edges:
            if a == b:
                raise ValidationError(f"loop at vertex {a}")
            if not (0 <= a < p and 0 <= b < p):
                raise ValidationError(f"edge ({a}, {b}) out of range for p = {p}")
            es.add((min(a, b), max(a, b)))
        return cls(p, frozenset(es))

    @classmethod
    def complete(cls, p: int) -> Graph:
        return cls(p, frozenset(combinations(range(p), 2)))

    @classmethod
    def parse(cls, text: str) -> Graph:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
        if not lines:
            raise ParseError("empty graph file")
        try:
            p = int(lines[0])
            edges = []
            for ln in lines[1:]:
                a, b = ln.split()
                edges.append((int(a) - 1, int(b) - 1))
        except ValueError:
            raise ParseError("graph file must be 'p' then lines 'i j'") from None
        try:
            return cls.of(p, edges)
        except ValidationError as exc:
            raise ParseError(str(exc)) from None

    def to_text(self) -> str:
        return "\n".join([str(self.p)] + [f"{a + 1} {b + 1}" for a, b in sorted(self.edges)]) + "\n"

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list:
        adj = [set() for _ in range(self.p)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def is_connected(self) -> bool:
        if self.p <= 1:
            return True
        adj = self.adjacency()
        seen, stack = {0}, [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.p

    def induced(self, block) -> Graph:
        idx = {v: k for k, v in enumerate(sorted(block))}
        return Graph(len(idx), frozenset((idx[a], idx[b]) for a, b in self.edges if a in idx and b in idx))

    def delete(self, e) -> Graph:
        return Graph(self.p, self.edges - {e})

    def contract(self, e) -> Graph:
        a, b = e  # merge b into a, renumber the vertices above b
        def f(v):
            v = a if v == b else v
            return v - 1 if v > b else v
        es = set()
        for x, y in self.edges:
            if (x, y) == e:
                continue
            x, y = f(x), f(y)
            if x != y:
                es.add((min(x, y), max(x, y)))
        return Graph(self.p - 1, frozenset(es))

    def __str__(self):
        return f"p={self.p} E={{{','.join(f'{a + 1}-{b + 1}' for a, b in sorted(self.edges))}}}"


# -- canonical form ---------------------------------------------------------------
def _refine(adj, col):
    n = len(adj)
    while True:
        sig = [(col[v], tuple(sorted(col[w] for w in adj[v]))) for v in range(n)]
        ids = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ids[s] for s in sig]
        if len(ids) == len(set(col)):
            return new
        col = new


def canonical_form(G: Graph) -> tuple:
    """``(p, sorted edges)`` under the lexicographically least labelling found by
    individualisation-refinement; equal for isomorphic graphs and only those."""
    adj = G.adjacency()
    best = None

    def search(col):
        nonlocal best
        col = _refine(adj, col)
        if len(set(col)) == G.p:
            cert = tuple(sorted((min(col[a], col[b]), max(col[a], col[b])) for a, b in G.edges))
            if best is None or cert < best:
                best = cert
            return
        sizes = {}
        for c in col:
            sizes[c] = sizes.get(c, 0) + 1
        target = min((s, c) for c, s in sizes.items() if s > 1)[1]
        for v in range(G.p):
            if col[v] == target:
                # individualise v: it precedes the rest of its cell
                search([2 * c + (0 if c != target or u == v else 1) for u, c in enumerate(col)])

    search([0] * G.p)
    return (G.p, best if best is not None else ())


def from_canonical(form) -> Graph:
    p, edges = form
    return Graph(p, frozenset(edges))


# -- chromatic polynomial -------------------------------------------------------------
def falling(p: int) -> IntPoly:
    out = ONE
    for k in range(p):
        out = out * IntPoly((-k, 1))
    return out


def _chromatic(G: Graph, memo):
    if not G.edges:
        return IntPoly.monomial(G.p)
    if G.m == G.p * (G.p - 1) // 2:
        return falling(G.p)
    key = canonical_form(G) if memo is not None else None
    if key is not None and key in memo:
        return memo[key]
    e = max(G.edges)
    res = _chromatic(G.delete(e), memo) - _chromatic(G.contract(e), memo)
    if key is not None:
        memo[key] = res
    return res


_CHROMATIC_MEMO = {}


def chromatic_poly(G: Graph, memo: bool = True) -> IntPoly:
    """Deletion-contraction, memoised on canonical forms unless ``memo=False``."""
    return _chromatic(G, _CHROMATIC_MEMO if memo else None)


def acyclic_count(G: Graph) -> int:
    """``a(G) = (-1)^p chi(G; -1)``."""
    v = chromatic_poly(G)(-1)
    return v if G.p % 2 == 0 else -v


def _is_acyclic(p, arcs):
    indeg = [0] * p
    out = [[] for _ in range(p)]
    for a, b in arcs:
        out[a].append(b)
        indeg[b] += 1
    stack = [v for v in range(p) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return seen == p


def acyclic_count_bruteforce(G: Graph) -> int:
    """Enumerate all ``2^m`` orientations."""
    if G.m > 16:
        raise SizeError("too many edges for orientation enumeration")
    edges = sorted(G.edges)
    total = 0
    for flips in product((False, True), repeat=len(edges)):
        arcs = [(b, a) if f else (a, b) for (a, b), f in zip(edges, flips)]
        total += _is_acyclic(G.p, arcs)
    return total


def acyclic_count_sources(G: Graph) -> int:
    """Inclusion-exclusion over the nonempty independent sets of sources."""
    adj = [0] * G.p
    for a, b in G.edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    memo = {0: 1}

    def a(mask):
        if mask in memo:
            return memo[mask]
        total = 0
        sub = mask
        while sub:
            indep = all(not (adj[v] & sub) for v in range(G.p) if sub >> v & 1)
            if indep:
                k = bin(sub).count("1")
                total += (-1) ** (k + 1) * a(mask & ~sub)
            sub = (sub - 1) & mask
        memo[mask] = total
        return total

    return a((1 << G.p) - 1)


# -- tau polynomial ------------------------------------------------------------------
def rising_basis(f: IntPoly) -> list:
    """Coefficients ``b_i`` with ``f = sum b_i x(x+1)...(x+i-1)``, by repeated synthetic division."""
    b = []
    cur = list(f.coeffs)
    i = 0
    while any(cur):
        val = IntPoly(cur)(-i)
        b.append(val)
        cur[0] -= val
        if len(cur) == 1:
            break
        # divide by (x + i), highest degree first
        d = len(cur) - 1
        q = [0] * d
        q[d - 1] = cur[d]
        for k in range(d - 1, 0, -1):
            q[k - 1] = cur[k] - i * q[k]
        if cur[0] - i * q[0]:
            raise ArithmeticError("synthetic division left a remainder")
        cur = q
        i += 1
    return b


def tau_poly(G: Graph) -> IntPoly:
    chi = chromatic_poly(G)
    b = rising_basis(chi)
    c = [(-1) ** (G.p - i) * bi for i, bi in enumerate(b)]
    if any(x < 0 for x in c):
        raise ArithmeticError(f"negative tau coefficient for {G}: {c}")
    return IntPoly(c)


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]


def tau_via_partitions(G: Graph) -> IntPoly:
    """``sum over set partitions pi of a(G[pi]) x^|pi|``."""
    if G.p > PARTITION_CAP:
        raise SizeError(f"partition sum over {G.p} vertices exceeds the cap {PARTITION_CAP}")
    coeffs = [0] * (G.p + 1)
    cache = {}
    for part in set_partitions(range(G.p)):
        a = 1
        for block in part:
            key = frozenset(block)
            if key not in cache:
                cache[key] = acyclic_count(G.induced(block))
            a *= cache[key]
        coeffs[len(part)] += a
    return IntPoly(coeffs)


# -- enumeration and the real-rootedness scan -------------------------------------------
def enumerate_graphs(p: int, connected: bool = False) -> list:
    """One representative per isomorphism class, grown by adding edges to smaller classes."""
    if p < 0:
        raise ValidationError("negative vertex count")
    level = {canonical_form(Graph(p, frozenset()))}
    out = list(level)
    pairs = list(combinations(range(p), 2))
    for _ in range(len(pairs)):
        nxt = set()
        for form in level:
            G = from_canonical(form)
            for e in pairs:
                if e not in G.edges:
                    nxt.add(canonical_form(Graph(p, G.edges | {e})))
        out.extend(sorted(nxt))
        level = nxt
    graphs = [from_canonical(f) for f in out]
    if connected:
        graphs = [G for G in graphs if G.is_connected()]
    return graphs


def enumerate_graphs_labeled(p: int, connected: bool = False) -> list:
    """Oracle: all labelled edge subsets, deduplicated by canonical form."""
    pairs = list(combinations(range(p), 2))
    seen = {}
    for bits in range(1 << len(pairs)):
        G = Graph(p, frozenset(e for k, e in enumerate(pairs) if bits >> k & 1))
        seen.setdefault(canonical_form(G), G)
    graphs = [from_canonical(f) for f in sorted(seen)]
    if connected:
        graphs = [G for G in graphs if G.is_connected()]
    return graphs


def tau_real_rooted_scan(max_vertices: int, connected: bool = True) -> list:
    if max_vertices > SCAN_CAP:
        raise SizeError(f"graph scan above {SCAN_CAP} vertices is beyond desk scale")
    reports = []
    for p in range(1, max_vertices + 1):
        for G in enumerate_graphs(p, connected):
            with stopwatch() as t:
                tau = tau_poly(G)
                ok = real_rooted(tau)
                chi_rr = real_rooted(chromatic_poly(G))
            inst = str(G)
            if ok:
                reports.append(passed("tau-scan", inst, f"tau={tau.render('x')}", elapsed_ms=t[0]))
            else:
                reports.append(failed("tau-scan", inst, f"tau={tau.render('x')} is not real-rooted",
                                      engine_suspect=chi_rr, elapsed_ms=t[0]))
    return reports

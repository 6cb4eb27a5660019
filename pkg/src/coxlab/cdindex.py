"""Reflection orderings, Bruhat paths and the complete cd-index.

``psi_tilde`` sums, over all directed paths ``u -> v`` of the Bruhat graph,
the ab-word recording ascents (a) and descents (b) of consecutive edge labels
in a fixed reflection ordering.  It is computed by dynamic programming over
(vertex, last label) rather than by listing paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import bruhat
from .coxeter import CoxeterSystem, Element, build_system
from .errors import DomainError, NotExpressibleError, SizeError, ValidationError
from .report import failed, passed, skipped, stopwatch

PATH_CAP = 10**6


# -- noncommutative word polynomials ------------------------------------------------
class WordPoly:
    """Integer combination of words over a two-letter alphabet."""

    alphabet = ""
    weights = {}

    def __init__(self, terms=None):
        clean = {}
        for w, c in (terms or {}).items():
            if any(ch not in self.alphabet for ch in w):
                raise ValidationError(f"word {w!r} is not over {self.alphabet!r}")
            if c:
                clean[w] = clean.get(w, 0) + c
        self.terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def word(cls, w: str, c: int = 1):
        return cls({w: c})

    def degree_of(self, w: str) -> int:
        return sum(self.weights[ch] for ch in w)

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return type(self)(out)

    def __neg__(self):
        return type(self)({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int):
        return type(self)({w: k * c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out[w1 + w2] = out.get(w1 + w2, 0) + c1 * c2
        return type(self)(out)

    def __eq__(self, other):
        return type(other) is type(self) and self.terms == other.terms

    def __hash__(self):
        return hash((type(self).__name__, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def homogeneous(self, deg: int):
        return type(self)({w: c for w, c in self.terms.items() if self.degree_of(w) == deg})

    def degrees(self) -> set:
        return {self.degree_of(w) for w in self.terms}

    def nonnegative(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (-self.degree_of(w), w)):
            c = self.terms[w]
            body = w or "1"
            mag = abs(c)
            txt = body if mag == 1 else (str(mag) if not w else f"{mag}{body}")
            if not parts:
                parts.append(txt if c > 0 else "-" + txt)
            else:
                parts.append(("+ " if c > 0 else "- ") + txt)
        return " ".join(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"{type(self).__name__}({self.render()!r})"


class ABPoly(WordPoly):
    alphabet = "ab"
    weights = {"a": 1, "b": 1}


class CDPoly(WordPoly):
    alphabet = "cd"
    weights = {"c": 1, "d": 2}


_C = ABPoly({"a": 1, "b": 1})
_D = ABPoly({"ab": 1, "ba": 1})


def expand(p: CDPoly) -> ABPoly:
    """Substitute ``c = a + b`` and ``d = ab + ba``."""
    out = ABPoly()
    for w, coeff in p.terms.items():
        term = ABPoly({"": coeff})
        for ch in w:
            term = term * (_C if ch == "c" else _D)
        out = out + term
    return out


def _leading_cd(word: str) -> str:
    out, i = [], 0
    while i < len(word):
        if word[i] != "b":
            raise NotExpressibleError(f"leading word {word!r} is not the top word of any cd-monomial")
        if i + 1 < len(word) and word[i + 1] == "a":
            out.append("d")
            i += 2
        else:
            out.append("c")
            i += 1
    return "".join(out)


def ab_to_cd(p: ABPoly) -> CDPoly:
    """Write ``p`` as a polynomial in ``c = a+b``, ``d = ab+ba``.

    The lexicographically largest word (with ``b > a``) of what remains must be
    the top word of a cd-monomial (``c -> b``, ``d -> ba``); its coefficient is
    peeled off and the expansion subtracted.
    """
    rest = ABPoly(p.terms)
    out = {}
    while not rest.is_zero():
        lead = max(rest.terms, key=lambda w: (len(w), w))
        cd = _leading_cd(lead)
        coeff = rest.terms[lead]
        out[cd] = out.get(cd, 0) + coeff
        rest = rest - expand(CDPoly({cd: coeff}))
    return CDPoly(out)


# -- reflection orderings ------------------------------------------------------------
@dataclass(frozen=True)
class ReflectionOrdering:
    system: CoxeterSystem
    ids: tuple  # element indices of the reflections, smallest first

    @property
    def position(self) -> dict:
        return {t: k for k, t in enumerate(self.ids)}

    def reversed(self) -> ReflectionOrdering:
        return ReflectionOrdering(self.system, self.ids[::-1])

    def __len__(self):
        return len(self.ids)


def _require_finite(sys: CoxeterSystem):
    if not sys.finite:
        raise DomainError(f"{sys.name} is infinite; reflection orderings need a finite system")


def longest_element(sys: CoxeterSystem) -> Element:
    _require_finite(sys)
    return max(sys.elements(), key=lambda w: (w.length, -w.index))


def ordering_from_word(sys: CoxeterSystem, word) -> ReflectionOrdering:
    """The inversion order ``s_1 ... s_{j-1} s_j s_{j-1} ... s_1`` of a reduced word of ``w0``."""
    _require_finite(sys)
    w0 = longest_element(sys)
    if sys.from_word(word) != w0 or len(word) != w0.length:
        raise ValidationError("not a reduced word of the longest element")
    ids, prefix = [], 0
    for s in word:
        t = sys._mult(sys._rm(prefix, s), sys._inverse(prefix))
        ids.append(t)
        prefix = sys._rm(prefix, s)
    return ReflectionOrdering(sys, tuple(ids))


def reflection_ordering(sys: CoxeterSystem) -> ReflectionOrdering:
    return ordering_from_word(sys, longest_element(sys).word)


def lexicographic_ordering(sys: CoxeterSystem) -> ReflectionOrdering:
    """Type A: transpositions ``(1,2) < (1,3) < ... < (n-1,n)``."""
    if sys.tag != "A":
        raise DomainError("the lexicographic transposition order is only defined in type A")
    n = sys.n + 1
    ids = []
    for i, j in combinations(range(1, n + 1), 2):
        win = list(range(1, n + 1))
        win[i - 1], win[j - 1] = j, i
        ids.append(sys.parse_element("[" + ",".join(map(str, win)) + "]").index)
    return ReflectionOrdering(sys, tuple(ids))


def reduced_words(w: Element, limit: int):
    """Up to ``limit`` reduced words of ``w`` (depth-first over right descents)."""
    sys = w.system
    out = []

    def rec(i, suffix):
        if len(out) >= limit:
            return
        if i == 0:
            out.append(tuple(suffix[::-1]))
            return
        for s in sorted(sys._rdescents(i)):
            rec(sys._rm(i, s), suffix + [s])

    rec(w.index, [])
    return out


def distinct_orderings(sys: CoxeterSystem, want: int = 4) -> list:
    """Several valid orderings: lexicographic (type A), inversion orders of reduced words of w0, and reverses."""
    w0 = longest_element(sys)
    cands = [lexicographic_ordering(sys)] if sys.tag == "A" else []
    for word in reduced_words(w0, 8 * want):
        o = ordering_from_word(sys, word)
        cands += [o, o.reversed()]
    seen, out = set(), []
    for o in cands:
        if o.ids not in seen:
            seen.add(o.ids)
            out.append(o)
        if len(out) >= want:
            break
    return out


def is_reflection_ordering(sys: CoxeterSystem, order) -> bool:
    """Check ``alpha < gamma < beta`` whenever ``gamma`` is a positive combination of ``alpha, beta``."""
    ids = order.ids if isinstance(order, ReflectionOrdering) else tuple(
        t.index if isinstance(t, Element) else t for t in order)
    refl = {r.element.index: r for r in sys.reflections()}
    if sorted(ids) != sorted(refl) or len(set(ids)) != len(ids):
        raise ValidationError("order is not a permutation of the reflections")
    roots = [refl[t].root for t in ids]
    n = len(ids)
    rep = sys.rep
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                if k != i and k != j and rep.in_open_cone(roots[i], roots[j], roots[k]):
                    if not i < k < j:
                        return False
    return True


# -- paths and psi ------------------------------------------------------------------------
def _adjacency(u: Element, v: Element):
    G = bruhat.bruhat_graph(u, v)
    out = [[] for _ in G.vertices]
    for a, b, t in G.edges:
        out[a].append((b, t.index))
    return G, out


def path_count(u: Element, v: Element) -> int:
    G, out = _adjacency(u, v)
    n = len(G.vertices)
    ways = [0] * n
    ways[n - 1] = 1  # members are length-sorted, v is last
    for a in range(n - 2, -1, -1):
        ways[a] = sum(ways[b] for b, _ in out[a])
    return ways[0]


def bruhat_paths(u: Element, v: Element, cap: int = PATH_CAP):
    """Yield ``(vertices, labels)`` for every directed path from ``u`` to ``v``."""
    total = path_count(u, v)
    if total > cap:
        raise SizeError(f"{total} paths exceed the cap {cap}")
    G, out = _adjacency(u, v)
    top = len(G.vertices) - 1
    ell = v.length - u.length

    def rec(a, verts, labels):
        if a == top:
            if (len(labels) - ell) % 2:
                raise AssertionError("path length parity differs from l(u,v)")
            yield tuple(G.vertices[x] for x in verts), tuple(u.system.element(t) for t in labels)
            return
        for b, t in out[a]:
            yield from rec(b, verts + [b], labels + [t])

    if top == 0:
        return
    yield from rec(0, [0], [])


def psi_tilde(u: Element, v: Element, order: ReflectionOrdering | None = None) -> ABPoly:
    if u.system is not v.system:
        raise DomainError("elements belong to different systems")
    if u == v or not u <= v:
        raise DomainError("psi needs u < v")
    sys = u.system
    order = order or default_ordering(sys)
    pos = order.position
    G, out = _adjacency(u, v)
    n = len(G.vertices)
    # state[b] maps last label -> ABPoly of words so far for paths u -> b
    state = [dict() for _ in range(n)]
    for b, t in out[0]:
        cur = state[b].setdefault(t, {})
        cur[""] = cur.get("", 0) + 1
    for a in range(1, n - 1):
        for t, words in state[a].items():
            for b, t2 in out[a]:
                letter = "a" if pos[t] < pos[t2] else "b"
                tgt = state[b].setdefault(t2, {})
                for w, c in words.items():
                    tgt[w + letter] = tgt.get(w + letter, 0) + c
    total = ABPoly()
    for words in state[n - 1].values():
        total = total + ABPoly(words)
    return total


def default_ordering(sys: CoxeterSystem) -> ReflectionOrdering:
    return lexicographic_ordering(sys) if sys.tag == "A" else reflection_ordering(sys)


def complete_cd_index(u: Element, v: Element, order: ReflectionOrdering | None = None) -> CDPoly:
    if u == v:
        return CDPoly({"": 1})
    return ab_to_cd(psi_tilde(u, v, order))


def top_part(phi: CDPoly, ell: int) -> CDPoly:
    """Homogeneous component of degree ``ell - 1``."""
    return phi.homogeneous(ell - 1)


# -- scan -------------------------------------------------------------------------------
def _cd_task(name, vi, max_len):
    sys = build_system(name)
    v = sys.element(vi)
    orders = distinct_orderings(sys)
    rows = []
    for ui in sorted(bruhat._lower_ideal(sys, vi)):
        u = sys.element(ui)
        ell = v.length - u.length
        if ell < 1 or ell > max_len:
            continue
        inst = f"{name}:[{sys.format_element(u) or 'e'},{sys.format_element(v) or 'e'}]"
        with stopwatch() as t:
            try:
                if path_count(u, v) > PATH_CAP:
                    raise SizeError(f"more than {PATH_CAP} paths")
                psis = [psi_tilde(u, v, o) for o in orders]
            except SizeError as exc:
                rows.append(("skipped", inst, str(exc), False, 0.0))
                continue
            psi = psis[0]
            phi = ab_to_cd(psi)
            status, wit, suspect = "pass", f"cd={phi.render()}", False
            if any(p != psi for p in psis[1:]):
                status, wit, suspect = "fail", "psi depends on the reflection ordering", True
            elif expand(phi) != psi:
                status, wit, suspect = "fail", "ab->cd round trip is not exact", True
            elif not top_part(phi, ell).nonnegative():
                status, wit, suspect = "fail", f"negative top part: {phi.render()}", True
            elif not phi.nonnegative():
                status, wit = "fail", f"negative coefficient: {phi.render()}"
        rows.append((status, inst, wit, suspect, t[0]))
    return rows


def cd_nonneg_scan(group: str, max_len: int, mapper=None) -> list:
    sys = build_system(group)
    _require_finite(sys)
    if len(distinct_orderings(sys)) < 3:
        raise DomainError(f"fewer than three distinct reflection orderings available for {group}")
    tasks = [(group, w.index, max_len) for w in sys.elements()]
    results = mapper(_cd_task, tasks) if mapper else [_cd_task(*a) for a in tasks]
    reports = []
    for chunk in results:
        for status, inst, wit, suspect, ms in chunk:
            if status == "pass":
                reports.append(passed("cd-nonneg", inst, wit, elapsed_ms=ms))
            elif status == "skipped":
                reports.append(skipped("cd-nonneg", inst, wit, elapsed_ms=ms))
            else:
                reports.append(failed("cd-nonneg", inst, wit, engine_suspect=suspect, elapsed_ms=ms))
    return reports

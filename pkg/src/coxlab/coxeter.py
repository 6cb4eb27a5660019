"""Coxeter systems and their elements.

Elements are identified through an exact faithful action (see
:mod:`coxlab.representation`). Every system enumerates its elements
breadth-first by length, appending generators in increasing order; this
visits the elements of each length in ShortLex order of their minimal
words, so the word recorded at discovery is the ShortLex-minimal reduced
word. Infinite systems are only ever enumerated up to a requested length.

Generator labels follow the usual signed-permutation conventions: type A_n
uses ``s1..sn``; types B_n and D_n use ``s0..s(n-1)`` with ``s0`` the
sign-change generator and ``si = (i, i+1)``.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import DomainError, ParseError, SizeError, ValidationError
from .intpoly import IntPoly
from .quadext import QuadExt
from .representation import INF, DihedralRep, GeometricRep, radicand_for
from . import windows

DEFAULT_ELEMENT_CAP = 200_000


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric matrix of orders ``m[i][j]``; ``0`` encodes infinity."""

    m: tuple

    def __post_init__(self):
        n = len(self.m)
        if n == 0:
            raise ValidationError("Coxeter matrix needs at least one generator")
        for i in range(n):
            if len(self.m[i]) != n:
                raise ValidationError("Coxeter matrix must be square")
            if self.m[i][i] != 1:
                raise ValidationError(f"m[{i}][{i}] must be 1")
            for j in range(n):
                if i == j:
                    continue
                mij = self.m[i][j]
                if mij != self.m[j][i]:
                    raise ValidationError(f"m[{i}][{j}] != m[{j}][{i}]")
                if mij != INF and (not isinstance(mij, int) or mij < 2):
                    raise ValidationError(f"m[{i}][{j}] = {mij} must be >= 2 or infinity")

    @property
    def n(self) -> int:
        return len(self.m)

    def __getitem__(self, ij):
        i, j = ij
        return self.m[i][j]

    def b_form(self, d):
        """Gram matrix of the bilinear form: ``B(a_i, a_j) = -cos(pi/m_ij)``."""
        half = {2: QuadExt(0, 0, d), 3: QuadExt(-_F(1, 2), 0, d), INF: QuadExt(-1, 0, d)}
        if d == 2:
            half[4] = QuadExt(0, -_F(1, 2), 2)
        if d == 5:
            half[5] = QuadExt(-_F(1, 4), -_F(1, 4), 5)
        if d == 3:
            half[6] = QuadExt(0, -_F(1, 2), 3)
        n = self.n
        return [
            [QuadExt(1, 0, d) if i == j else half[self.m[i][j]] for j in range(n)] for i in range(n)
        ]


def _F(a, b):
    from fractions import Fraction

    return Fraction(a, b)


class Element:
    """An element of a Coxeter system; a thin handle on an enumeration index."""

    __slots__ = ("system", "index")

    def __init__(self, system: CoxeterSystem, index: int):
        self.system = system
        self.index = index

    @property
    def word(self) -> tuple:
        """ShortLex-minimal reduced word as a tuple of generator indices."""
        return self.system._words[self.index]

    @property
    def length(self) -> int:
        return self.system._lengths[self.index]

    @property
    def action(self):
        return self.system._keys[self.index]

    @property
    def matrix(self):
        return self.system.rep.matrix(self.action)

    def is_identity(self) -> bool:
        return self.index == 0

    def right_descents(self) -> frozenset:
        return self.system.right_descents(self)

    def left_descents(self) -> frozenset:
        return self.system.left_descents(self)

    def inverse(self) -> Element:
        return self.system.inverse(self)

    def __mul__(self, other):
        return self.system.multiply(self, other)

    def __rmul__(self, s):
        if isinstance(s, int):
            return self.system.left_multiply(s, self)
        return NotImplemented

    def __le__(self, other):
        return self.system.bruhat_leq(self, other)

    def __lt__(self, other):
        return self != other and self.system.bruhat_leq(self, other)

    def __eq__(self, other):
        return isinstance(other, Element) and self.system is other.system and self.index == other.index

    def __hash__(self):
        return hash((id(self.system), self.index))

    def __reduce__(self):
        return (_restore_element, (self.system.name, self.word))

    def __str__(self):
        return self.system.format_element(self) or "e"

    def __repr__(self):
        return f"<{self.system.name} {self}>"


def _restore_element(name, word):
    sys = build_system(name)
    return sys.from_word(word)


@dataclass(frozen=True)
class Reflection:
    """A reflection together with the positive root it corresponds to."""

    element: Element
    root: tuple

    @property
    def length(self):
        return self.element.length

    def __str__(self):
        return str(self.element)


class CoxeterSystem:
    """A Coxeter system with lazily enumerated elements."""

    def __init__(self, matrix: CoxeterMatrix, tag: str, name: str, labels=None,
                 finite=None, element_cap: int = DEFAULT_ELEMENT_CAP):
        self.matrix = matrix
        self.tag = tag
        self.name = name
        self.n = matrix.n
        self.labels = tuple(labels) if labels is not None else tuple(range(1, self.n + 1))
        self.element_cap = element_cap
        if tag == "I2" and matrix.m[0][1] not in (2, 3, 4, 5, 6, INF):
            self.rep = DihedralRep(matrix.m[0][1])
        else:
            self.rep = GeometricRep(matrix.m)
        self.d = self.rep.d
        self._lock = threading.RLock()
        ident = self.rep.identity()
        self._keys = [ident]
        self._index = {ident: 0}
        self._words = [()]
        self._lengths = [0]
        self._rmul = [[None] * self.n]
        self._elements = [Element(self, 0)]
        self._level = [0]
        self._depth = 0
        self._complete = False
        self._rdesc = {}
        self._inv = {0: 0}
        self._bruhat = {}
        self._refl_cache = {}
        if finite is None:
            finite = self._probe_finite()
        self.finite = finite

    # -- enumeration ------------------------------------------------------
    def _grow(self):
        rep, n = self.rep, self.n
        nxt = []
        for i in self._level:
            key = self._keys[i]
            row = self._rmul[i]
            for s in range(n):
                if row[s] is not None:
                    continue
                k2 = rep.right(key, s)
                j = self._index.get(k2)
                if j is None:
                    j = len(self._keys)
                    self._keys.append(k2)
                    self._index[k2] = j
                    self._words.append(self._words[i] + (s,))
                    self._lengths.append(self._depth + 1)
                    self._rmul.append([None] * n)
                    self._elements.append(Element(self, j))
                    nxt.append(j)
                row[s] = j
                self._rmul[j][s] = i
        self._depth += 1
        self._level = nxt
        if not nxt:
            self._complete = True

    def _ensure(self, length: int):
        if self._complete or self._depth >= length:
            return
        with self._lock:
            while not self._complete and self._depth < length:
                if len(self._keys) > self.element_cap:
                    raise SizeError(
                        f"{self.name}: more than {self.element_cap} elements enumerated"
                    )
                self._grow()

    def _ensure_all(self):
        if not self.finite:
            raise DomainError(f"{self.name} is infinite; a length cap is required")
        self._ensure(10 ** 9)

    def _probe_finite(self) -> bool:
        # exhaustive BFS up to the element cap; positive-definiteness of the
        # bilinear form separates "large finite" from "infinite" at the cap
        try:
            self._ensure(10 ** 9)
        except SizeError:
            if self._positive_definite():
                raise SizeError(f"{self.name}: finite group larger than cap {self.element_cap}")
            return False
        return True

    def _positive_definite(self) -> bool:
        if isinstance(self.rep, DihedralRep):
            return True
        b = self.matrix.b_form(self.d)
        n = self.n
        # Sylvester: all leading principal minors positive
        for k in range(1, n + 1):
            if _det([row[:k] for row in b[:k]]).sign() <= 0:
                return False
        return True

    @property
    def order(self) -> int:
        self._ensure_all()
        return len(self._keys)

    def _rm(self, i: int, s: int) -> int:
        r = self._rmul[i][s]
        if r is None:
            self._ensure(self._lengths[i] + 1)
            r = self._rmul[i][s]
        return r

    def _mult(self, i: int, j: int) -> int:
        for s in self._words[j]:
            i = self._rm(i, s)
        return i

    def _inverse(self, i: int) -> int:
        r = self._inv.get(i)
        if r is None:
            r = 0
            for s in reversed(self._words[i]):
                r = self._rm(r, s)
            self._inv[i] = r
            self._inv[r] = i
        return r

    def _lm(self, s: int, i: int) -> int:
        self._ensure(self._lengths[i] + 1)
        return self._index[self.rep.left(s, self._keys[i])]

    def _rdescents(self, i: int) -> frozenset:
        r = self._rdesc.get(i)
        if r is None:
            key = self._keys[i]
            r = frozenset(s for s in range(self.n) if self.rep.root_negative(key, s))
            self._rdesc[i] = r
        return r

    def _ldescents(self, i: int) -> frozenset:
        return self._rdescents(self._inverse(i))

    def _leq(self, u: int, v: int) -> bool:
        if u == v or u == 0:
            return True
        lu, lv = self._lengths[u], self._lengths[v]
        if lu >= lv:
            return False
        key = (u, v)
        r = self._bruhat.get(key)
        if r is not None:
            return r
        s = min(self._rdescents(v))
        vs = self._rm(v, s)
        us = self._rm(u, s)
        if self._lengths[us] < lu:
            r = self._leq(us, vs)
        else:
            r = self._leq(u, vs)
        self._bruhat[key] = r
        return r

    # -- element construction ------------------------------------------------
    def element(self, index: int) -> Element:
        return self._elements[index]

    @property
    def identity(self) -> Element:
        return self._elements[0]

    def generator(self, s: int) -> Element:
        if not 0 <= s < self.n:
            raise ValidationError(f"generator index {s} out of range for {self.name}")
        return self._elements[self._rm(0, s)]

    def from_word(self, word: Sequence[int]) -> Element:
        i = 0
        for s in word:
            if not 0 <= s < self.n:
                raise ValidationError(f"generator index {s} out of range for {self.name}")
            i = self._rm(i, s)
        return self._elements[i]

    def elements(self, max_length: int | None = None) -> Iterator[Element]:
        """All elements in (length, ShortLex) order, up to ``max_length``."""
        if max_length is None:
            self._ensure_all()
            return iter(list(self._elements))
        self._ensure(max_length)
        return iter([e for e in self._elements if e.length <= max_length])

    def _own(self, *xs):
        for x in xs:
            if isinstance(x, Element) and x.system is not self:
                raise DomainError(f"element of {x.system.name} used in {self.name}")

    # -- group operations -----------------------------------------------------
    def multiply(self, w: Element, x) -> Element:
        self._own(w, x)
        if isinstance(x, int):
            if not 0 <= x < self.n:
                raise ValidationError(f"generator index {x} out of range")
            return self._elements[self._rm(w.index, x)]
        return self._elements[self._mult(w.index, x.index)]

    def left_multiply(self, s: int, w: Element) -> Element:
        self._own(w)
        return self._elements[self._lm(s, w.index)]

    def inverse(self, w: Element) -> Element:
        self._own(w)
        return self._elements[self._inverse(w.index)]

    def right_descents(self, w: Element) -> frozenset:
        self._own(w)
        return self._rdescents(w.index)

    def left_descents(self, w: Element) -> frozenset:
        self._own(w)
        return self._ldescents(w.index)

    def bruhat_leq(self, u: Element, v: Element) -> bool:
        self._own(u, v)
        return self._leq(u.index, v.index)

    # -- reflections ---------------------------------------------------------
    def reflections_up_to(self, max_length=None) -> list:
        """All reflections of length <= max_length (``None`` = all, finite only).

        Reflections are found as conjugates ``w s w^-1`` with
        ``l(w) <= (max_length - 1) / 2``; every reflection has a palindromic
        reduced word, so nothing is missed.
        """
        if max_length is None:
            if not self.finite:
                raise DomainError(f"{self.name} is infinite; reflections need a length cap")
            self._ensure_all()
            max_length = 2 * max(self._lengths) + 1
        cached = self._refl_cache.get(max_length)
        if cached is not None:
            return cached
        half = (max_length - 1) // 2
        self._ensure(max_length)
        found = {}
        for w in list(self._elements):
            if w.length > half:
                break
            key = self._keys[w.index]
            winv = self._inverse(w.index)
            for s in range(self.n):
                if self.rep.root_negative(key, s):
                    continue
                t = self._mult(self._rm(w.index, s), winv)
                if self._lengths[t] <= max_length and t not in found:
                    found[t] = Reflection(self._elements[t], self.rep.root(key, s))
        out = sorted(found.values(), key=lambda r: r.element.index)
        self._refl_cache[max_length] = out
        return out

    def reflections(self) -> list:
        return self.reflections_up_to(None)

    def reflection_ids(self, max_length=None) -> frozenset:
        return frozenset(r.element.index for r in self.reflections_up_to(max_length))

    def n_left(self, w: Element) -> set:
        """``N_L(w) = {t in T : l(tw) < l(w)}``."""
        self._own(w)
        if w.length == 0:
            return set()
        refl = self.reflections_up_to(None if self.finite else 2 * w.length - 1)
        return {t for t in refl if self._lengths[self._mult(t.element.index, w.index)] < w.length}

    def reflection_length_series(self, max_length=None) -> IntPoly:
        counts = {}
        for t in self.reflections_up_to(max_length):
            counts[t.length] = counts.get(t.length, 0) + 1
        top = max(counts) if counts else 0
        return IntPoly(counts.get(k, 0) for k in range(top + 1))

    # -- quotients -----------------------------------------------------------
    def in_quotient(self, w: Element, J) -> bool:
        self._own(w)
        return not (self._ldescents(w.index) & frozenset(J))

    def enumerate_quotient(self, J, max_length=None) -> Iterator[Element]:
        J = frozenset(J)
        for w in self.elements(max_length):
            if not (self._ldescents(w.index) & J):
                yield w

    # -- text I/O ---------------------------------------------------------------
    def generator_name(self, s: int) -> str:
        return f"s{self.labels[s]}"

    def parse_generator(self, tok: str) -> int:
        m = re.fullmatch(r"s?(\d+)", tok.strip())
        if not m:
            raise ParseError(f"bad generator {tok!r}")
        lab = int(m.group(1))
        if lab not in self.labels:
            raise ParseError(f"generator s{lab} not in {self.name}")
        return self.labels.index(lab)

    def parse_element(self, text: str) -> Element:
        text = text.strip()
        if text.startswith("["):
            if self.tag not in ("A", "B", "D"):
                raise ParseError(f"window notation not available for {self.name}")
            try:
                vals = [int(x) for x in text.strip("[]").split(",")]
            except ValueError as exc:
                raise ParseError(f"bad window {text!r}") from exc
            word = windows.window_to_word(self.tag, self.n, vals)
            return self.from_word(word)
        if text in ("", "e"):
            return self.identity
        return self.from_word([self.parse_generator(tok) for tok in text.split(".")])

    def format_element(self, w: Element) -> str:
        return ".".join(self.generator_name(s) for s in w.word)

    def window(self, w: Element) -> list:
        if self.tag not in ("A", "B", "D"):
            raise DomainError(f"no window notation for {self.name}")
        return windows.word_to_window(self.tag, self.n, w.word)

    def format_window(self, w: Element) -> str:
        return "[" + ",".join(str(x) for x in self.window(w)) + "]"

    def generator_matrices(self):
        return [self.rep.generator_matrix(s) for s in range(self.n)]

    def __repr__(self):
        return f"CoxeterSystem({self.name})"

    def __reduce__(self):
        return (build_system, (self.name,))


def _det(rows):
    """Determinant over QuadExt by fraction-bearing Gaussian elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    det = QuadExt(1, 0, a[0][0].d if n else 1)
    for c in range(n):
        p = next((r for r in range(c, n) if not a[r][c].is_zero()), None)
        if p is None:
            return det * 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det = det * a[c][c]
        inv = a[c][c].inverse()
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f.is_zero():
                continue
            for k in range(c, n):
                a[r][k] = a[r][k] - f * a[c][k]
    return det


# -- descriptors ------------------------------------------------------------------
def _chain(n, marks=None):
    m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        m[i][i + 1] = m[i + 1][i] = 3
    for (i, j), v in (marks or {}).items():
        m[i][j] = m[j][i] = v
    return m


def _matrix_for(tag: str, rank: int):
    if tag == "A":
        return _chain(rank), list(range(1, rank + 1))
    if tag == "B":
        return _chain(rank, {(0, 1): 4} if rank >= 2 else None), list(range(rank))
    if tag == "D":
        m = _chain(rank)
        if rank >= 2:
            m[0][1] = m[1][0] = 2
        if rank >= 3:
            m[0][2] = m[2][0] = 3
        return m, list(range(rank))
    raise ValidationError(tag)


_DESCRIPTOR = re.compile(r"^(?:([ABD])(\d+)|(F4)|(H3)|I2\((\d+|inf)\)|(At2)|matrix:(.*))$")


@lru_cache(maxsize=None)
def build_system(spec: str, element_cap: int = DEFAULT_ELEMENT_CAP) -> CoxeterSystem:
    """Build a Coxeter system from a descriptor such as ``"B5"`` or ``"I2(7)"``.

    Also accepts ``matrix:<n>;<row>;<row>...`` with comma separated entries
    and ``inf`` for infinity. Systems are cached per descriptor so repeated
    calls share enumeration work.
    """
    spec = spec.strip()
    mt = _DESCRIPTOR.match(spec)
    if not mt:
        raise ValidationError(f"unknown group descriptor {spec!r}")
    fam, num, f4, h3, i2, at2, raw = mt.groups()
    if fam:
        rank = int(num)
        lo = {"A": 1, "B": 2, "D": 2}[fam]
        if rank < lo:
            raise ValidationError(f"{fam}{rank} needs rank >= {lo}")
        m, labels = _matrix_for(fam, rank)
        return CoxeterSystem(_cm(m), fam, spec, labels, finite=True, element_cap=element_cap)
    if f4:
        m = _chain(4, {(1, 2): 4})
        return CoxeterSystem(_cm(m), "F4", spec, finite=True, element_cap=element_cap)
    if h3:
        m = _chain(3, {(0, 1): 5})
        return CoxeterSystem(_cm(m), "H3", spec, finite=True, element_cap=element_cap)
    if i2:
        mm = INF if i2 == "inf" else int(i2)
        if mm != INF and mm < 2:
            raise ValidationError("I2(m) needs m >= 2")
        m = [[1, mm], [mm, 1]]
        return CoxeterSystem(_cm(m), "I2", spec, finite=mm != INF, element_cap=element_cap)
    if at2:
        m = [[1, 3, 3], [3, 1, 3], [3, 3, 1]]
        return CoxeterSystem(_cm(m), "affine", spec, finite=False, element_cap=element_cap)
    return CoxeterSystem(_cm(_parse_matrix(raw)), "generic", spec, element_cap=element_cap)


def _cm(m):
    return CoxeterMatrix(tuple(tuple(r) for r in m))


def _parse_matrix(text: str):
    parts = [p for p in text.split(";") if p.strip()]
    try:
        n = int(parts[0])
        rows = [[INF if tok.strip() == "inf" else int(tok) for tok in p.split(",")] for p in parts[1:]]
    except (ValueError, IndexError) as exc:
        raise ValidationError(f"bad matrix descriptor {text!r}") from exc
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValidationError(f"matrix descriptor does not describe a {n}x{n} matrix")
    for i in range(n):
        for j in range(n):
            if i != j and rows[i][j] == INF:
                continue
            if i != j and rows[i][j] == 0:
                raise ValidationError("use 'inf' for infinite entries")
    off = [rows[i][j] for i in range(n) for j in range(n) if i != j]
    CoxeterMatrix(tuple(tuple(r) for r in rows))  # validation first
    radicand_for(off)
    return rows


# -- module-level convenience mirrors ---------------------------------------------
def multiply(w: Element, x) -> Element:
    if isinstance(x, Element) and x.system is not w.system:
        raise DomainError("elements belong to different systems")
    return w.system.multiply(w, x)


def length(w: Element) -> int:
    return w.length


def right_descents(w: Element) -> frozenset:
    return w.system.right_descents(w)


def left_descents(w: Element) -> frozenset:
    return w.system.left_descents(w)


def bruhat_leq(u: Element, v: Element) -> bool:
    if u.system is not v.system:
        raise DomainError("elements belong to different systems")
    return u.system.bruhat_leq(u, v)


def in_quotient(w: Element, J) -> bool:
    return w.system.in_quotient(w, J)


def parse_element(system: CoxeterSystem, text: str) -> Element:
    return system.parse_element(text)


def format_element(w: Element) -> str:
    return w.system.format_element(w)


def parse_subset(system: CoxeterSystem, text: str) -> frozenset:
    """Parse a generator subset: ``-`` or empty for none, ``s1,s3``, or ``-s3`` for S minus s3."""
    text = (text or "").strip()
    if text in ("", "-"):
        return frozenset()
    if text.startswith("-"):
        drop = {system.parse_generator(t) for t in text[1:].split(",") if t}
        return frozenset(range(system.n)) - drop
    return frozenset(system.parse_generator(t) for t in text.split(",") if t)


def format_subset(system: CoxeterSystem, J) -> str:
    if not J:
        return "-"
    return ",".join(str(system.labels[s]) for s in sorted(J))

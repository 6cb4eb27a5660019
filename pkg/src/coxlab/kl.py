"""Parabolic R-polynomials and Kazhdan-Lusztig polynomials of both types.

``R`` follows the descent recursion directly. ``P`` is extracted from the
defining identity

    q^l(u,v) P_{u,v}(1/q) = sum over a in [u,v]^J of R_{u,a}(q) P_{a,v}(q)

by processing ``u`` downward for fixed ``v``: moving the ``a = u`` term to
the left leaves ``f = q^l P(1/q) - P`` with ``f`` known, and the degree bound
``deg P < l/2`` makes the low half of ``f`` equal to ``-P``. The split is
verified coefficient by coefficient.
"""

from __future__ import annotations

import os
import re
import threading

from .bruhat import _lower_ideal
from .coxeter import CoxeterSystem, Element, format_subset
from .errors import ConsistencyError, DomainError, ParseError, QuotientMembershipError
from .intpoly import ONE, Q, Q_MINUS_1, ZERO, IntPoly

X_TYPES = ("q", "-1")


class PolyCache:
    """Polynomial store keyed by (family, group, u-word, v-word, J, x).

    Inserts are idempotent; a conflicting value for an existing key is an
    engine error.
    """

    LINE = re.compile(r"^([PR])\|([^|]+)\|u=([^|]*)\|v=([^|]*)\|J=([^|]*)\|x=(q|-1)\|coeffs=([-0-9,]+)$")

    def __init__(self):
        self._data = {}
        self._lock = threading.Lock()

    def __len__(self):
        return len(self._data)

    def __contains__(self, key):
        return key in self._data

    def get(self, key):
        return self._data.get(key)

    def put(self, key, value: IntPoly):
        with self._lock:
            old = self._data.get(key)
            if old is not None and old != value:
                raise ConsistencyError(f"cache conflict for {key}: {old} vs {value}")
            self._data[key] = value

    def items(self):
        return sorted(self._data.items())

    @staticmethod
    def format_line(key, value: IntPoly) -> str:
        fam, group, u, v, J, x = key
        return f"{fam}|{group}|u={u}|v={v}|J={J}|x={x}|coeffs={value.to_csv()}"

    @classmethod
    def parse_line(cls, line: str):
        m = cls.LINE.match(line.strip())
        if not m:
            raise ParseError(f"malformed cache line {line.strip()!r}")
        fam, group, u, v, J, x, coeffs = m.groups()
        return (fam, group, u, v, J, x), IntPoly.from_csv(coeffs)

    def load(self, path):
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    key, value = self.parse_line(line)
                except ParseError as exc:
                    raise ParseError(f"{path}:{lineno}: {exc}") from None
                self.put(key, value)
        return self

    def store(self, path):
        parent = os.path.dirname(os.fspath(path))
        if parent:
            os.makedirs(parent, exist_ok=True)
        tmp = f"{path}.tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            for key, value in self.items():
                fh.write(self.format_line(key, value) + "\n")
        os.replace(tmp, path)


def cache_load(path) -> PolyCache:
    return PolyCache().load(path)


def cache_store(cache: PolyCache, path):
    cache.store(path)


class ParabolicContext:
    """Polynomials of ``W^J`` of type ``x`` for one system.

    ``descent`` picks the right descent used by the recursions (default: the
    smallest index).
    """

    def __init__(self, system: CoxeterSystem, J=(), x: str = "q", cache: PolyCache | None = None,
                 descent=min):
        if x not in X_TYPES:
            raise DomainError(f"x must be 'q' or '-1', got {x!r}")
        self.system = system
        self.J = frozenset(J)
        self.x = x
        self.cache = cache
        self.descent = descent
        self._third = -ONE if x == "q" else Q  # q - 1 - x
        self._r = {}
        self._p = {}
        self._jtext = format_subset(system, self.J)

    def in_quotient(self, i: int) -> bool:
        return not (self.system._ldescents(i) & self.J)

    def _check(self, *elems: Element):
        for w in elems:
            if w.system is not self.system:
                raise DomainError("element from another system")
            if not self.in_quotient(w.index):
                raise QuotientMembershipError(f"{w} is not in W^J")

    def _key(self, fam, u, v):
        sys = self.system
        return (fam, sys.name, sys.format_element(sys.element(u)),
                sys.format_element(sys.element(v)), self._jtext, self.x)

    # -- R ---------------------------------------------------------------------
    def r(self, u: Element, v: Element) -> IntPoly:
        self._check(u, v)
        return self._R(u.index, v.index)

    def _R(self, u: int, v: int) -> IntPoly:
        if u == v:
            return ONE
        sys = self.system
        if not sys._leq(u, v):
            return ZERO
        res = self._r.get((u, v))
        if res is not None:
            return res
        if self.cache is not None:
            res = self.cache.get(self._key("R", u, v))
        if res is None:
            s = self.descent(sys._rdescents(v))
            vs, us = sys._rm(v, s), sys._rm(u, s)
            if sys._lengths[us] < sys._lengths[u]:
                res = self._R(us, vs)
            elif self.in_quotient(us):
                res = Q_MINUS_1 * self._R(u, vs) + Q * self._R(us, vs)
            else:
                res = self._third * self._R(u, vs)
            if self.cache is not None:
                self.cache.put(self._key("R", u, v), res)
        self._r[(u, v)] = res
        return res

    # -- P ---------------------------------------------------------------------
    def quotient_interval_ids(self, u: int, v: int) -> list:
        sys = self.system
        return sorted(a for a in _lower_ideal(sys, v) if sys._leq(u, a) and self.in_quotient(a))

    def p(self, u: Element, v: Element) -> IntPoly:
        self._check(u, v)
        return self._P(u.index, v.index)

    def _P(self, u: int, v: int) -> IntPoly:
        if u == v:
            return ONE
        sys = self.system
        if not sys._leq(u, v):
            return ZERO
        res = self._p.get((u, v))
        if res is not None:
            return res
        if self.cache is not None:
            res = self.cache.get(self._key("P", u, v))
        if res is None:
            # fill from the top so recursion depth stays small
            for a in sorted(self.quotient_interval_ids(u, v), key=lambda i: -sys._lengths[i]):
                if a != u and (a, v) not in self._p and a != v:
                    self._P(a, v)
            res = self._solve(u, v)
            if self.cache is not None:
                self.cache.put(self._key("P", u, v), res)
        self._p[(u, v)] = res
        return res

    def _solve(self, u: int, v: int) -> IntPoly:
        sys = self.system
        ell = sys._lengths[v] - sys._lengths[u]
        f = ZERO
        for a in self.quotient_interval_ids(u, v):
            if a != u:
                f = f + self._R(u, a) * self._P(a, v)
        low = (ell - 1) // 2  # deg P <= low
        P = IntPoly(-f[k] for k in range(low + 1))
        if f != P.reversed(ell) - P:
            raise ConsistencyError(
                f"defining identity does not split for {sys.element(u)} <= {sys.element(v)}: f = {f}"
            )
        return P

    def residual(self, u: Element, v: Element) -> IntPoly:
        """``q^l P_{u,v}(1/q) - sum R_{u,a} P_{a,v}``; zero when the engine is right."""
        self._check(u, v)
        sys = self.system
        ui, vi = u.index, v.index
        if not sys._leq(ui, vi):
            return ZERO
        ell = v.length - u.length
        rhs = ZERO
        for a in self.quotient_interval_ids(ui, vi):
            rhs = rhs + self._R(ui, a) * self._P(a, vi)
        return self._P(ui, vi).reversed(ell) - rhs


_CONTEXTS = {}
_CTX_LOCK = threading.Lock()
_DEFAULT_CACHE = [None]


def set_default_cache(cache: PolyCache | None):
    """Cache picked up by :func:`context` when none is passed explicitly."""
    _DEFAULT_CACHE[0] = cache


def context(system: CoxeterSystem, J=(), x: str = "q", cache: PolyCache | None = None) -> ParabolicContext:
    """Shared context per (system, J, x, cache) so repeated queries reuse work."""
    if cache is None:
        cache = _DEFAULT_CACHE[0]
    key = (id(system), frozenset(J), x, id(cache) if cache is not None else None)
    with _CTX_LOCK:
        ctx = _CONTEXTS.get(key)
        if ctx is None:
            ctx = _CONTEXTS[key] = ParabolicContext(system, J, x, cache)
    return ctx


def parabolic_r(ctx: ParabolicContext, u: Element, v: Element) -> IntPoly:
    return ctx.r(u, v)


def parabolic_kl(ctx: ParabolicContext, u: Element, v: Element) -> IntPoly:
    return ctx.p(u, v)


def kl_poly(u: Element, v: Element) -> IntPoly:
    return context(u.system).p(u, v)


def r_poly(u: Element, v: Element) -> IntPoly:
    return context(u.system).r(u, v)


def rtilde_from_r(R: IntPoly, ell: int) -> IntPoly:
    """Solve ``R(q) = sum_j rt[l-2j] q^j (q-1)^(l-2j)`` for the R-tilde coefficients."""
    if R.is_zero():
        return ZERO
    if R.degree > ell:
        raise ConsistencyError(f"deg R = {R.degree} exceeds l = {ell}")
    rem = list(R.padded(ell))
    out = [0] * (ell + 1)
    sign = -1 if ell % 2 else 1
    for j in range(ell // 2 + 1):
        k = ell - 2 * j
        c = sign * rem[j]
        out[k] = c
        if c:
            basis = (Q_MINUS_1 ** k).shift(j) * c
            for i, b in enumerate(basis.coeffs):
                rem[i] -= b
    if any(rem):
        raise ConsistencyError(f"R = {R} is not of the form q^(l/2) Rt(q^1/2 - q^-1/2)")
    rt = IntPoly(out)
    if not rt.nonnegative():
        raise ConsistencyError(f"R-tilde {rt.render('t')} has a negative coefficient")
    if rt.degree != ell or any(c and (k - ell) % 2 for k, c in enumerate(rt.coeffs)):
        raise ConsistencyError(f"R-tilde {rt.render('t')} violates degree/parity for l = {ell}")
    return rt


def rtilde(u: Element, v: Element) -> IntPoly:
    if not u.system.bruhat_leq(u, v):
        return ZERO
    return rtilde_from_r(r_poly(u, v), v.length - u.length)


def q_from_rtilde(rt: IntPoly, ell: int) -> IntPoly:
    if rt.is_zero():
        return ZERO
    return IntPoly(rt[k] for k in range(ell % 2, ell + 1, 2))


def q_poly(u: Element, v: Element) -> IntPoly:
    if not u.system.bruhat_leq(u, v):
        return ZERO
    ell = v.length - u.length
    return q_from_rtilde(rtilde(u, v), ell)


def laurent_check(R: IntPoly, rt: IntPoly, ell: int) -> bool:
    """Exact check of ``R(s^2) = s^l * Rt(s - 1/s)`` as polynomials in ``s``.

    ``s^l (s - 1/s)^k = s^(l-k) (s^2 - 1)^k`` is a polynomial since k <= l.
    """
    lhs = IntPoly(c if i % 2 == 0 else 0 for i, c in enumerate(
        [R[i // 2] if i % 2 == 0 else 0 for i in range(2 * max(R.degree, 0) + 1)]))
    rhs = ZERO
    s2m1 = IntPoly((-1, 0, 1))
    for k, c in enumerate(rt.coeffs):
        if c:
            rhs = rhs + (s2m1 ** k).shift(ell - k) * c
    return lhs == rhs

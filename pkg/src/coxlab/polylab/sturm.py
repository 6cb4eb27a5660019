"""Exact real-rootedness via Sturm chains over the rationals.

Polynomials are lists of Fractions, constant term first.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import DomainError
from ..intpoly import IntPoly


def _norm(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _as_frac(p):
    if isinstance(p, IntPoly):
        p = p.coeffs
    return _norm([Fraction(c) for c in p])


def _divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] / lead
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] -= c * bc
        a = _norm(a)
    return q, a


def _gcd(a, b):
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    return [c / a[-1] for c in a]


def _deriv(p):
    return _norm([k * c for k, c in enumerate(p)][1:])


def sturm_chain(p) -> list:
    chain = [p, _deriv(p)]
    while chain[-1]:
        _, r = _divmod(chain[-2], chain[-1])
        chain.append([-c for c in r])
    return chain[:-1]


def _sign_changes(signs):
    signs = [s for s in signs if s]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def _sign_at_inf(p, positive):
    s = 1 if p[-1] > 0 else -1
    if not positive and (len(p) - 1) % 2:
        s = -s
    return s


def count_real_roots(p) -> int:
    """Number of distinct real roots."""
    p = _as_frac(p)
    if not p:
        raise DomainError("the zero polynomial has no finite root set")
    if len(p) == 1:
        return 0
    chain = sturm_chain(p)
    lo = _sign_changes([_sign_at_inf(q, False) for q in chain])
    hi = _sign_changes([_sign_at_inf(q, True) for q in chain])
    return lo - hi


def squarefree_part(p) -> list:
    p = _as_frac(p)
    d = _deriv(p)
    if not d:
        return p
    g = _gcd(p, d)
    q, r = _divmod(p, g)
    assert not r
    return _norm(q)


def real_rooted(p) -> bool:
    """True iff every complex root of ``p`` is real.  Constants count as real-rooted."""
    p = _as_frac(p)
    if not p:
        raise DomainError("real-rootedness of the zero polynomial is undefined")
    sf = squarefree_part(p)
    return count_real_roots(sf) == len(sf) - 1

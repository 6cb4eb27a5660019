"""Symmetry, unimodality, log-concavity and gamma-vectors of integer sequences.

All tests read the literal coefficient vector, internal zeros included.
Sequences may be given as lists, tuples or :class:`~coxlab.intpoly.IntPoly`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from ..errors import DomainError, ValidationError
from ..intpoly import IntPoly


def _seq(p) -> list:
    if isinstance(p, IntPoly):
        return list(p.coeffs)
    return [int(c) for c in p]


def _center(a, n):
    if n is None:
        return max(len(a) - 1, 0)
    deg = max((k for k, c in enumerate(a) if c), default=-1)
    if n < deg:
        raise ValidationError(f"n = {n} is below the degree {deg}")
    return n


def _pad(a, n):
    return a[: n + 1] + [0] * (n + 1 - len(a))


def is_symmetric(p, n: int | None = None) -> bool:
    """``a_j = a_{n-j}`` for all j; ``n`` defaults to the length of the vector minus one."""
    a = _seq(p)
    n = _center(a, n)
    a = _pad(a, n)
    return all(a[j] == a[n - j] for j in range(n + 1))


def is_unimodal(p) -> bool:
    a = _seq(p)
    k = 0
    while k + 1 < len(a) and a[k] <= a[k + 1]:
        k += 1
    while k + 1 < len(a) and a[k] >= a[k + 1]:
        k += 1
    return k + 1 >= len(a)


def log_concavity_failures(p) -> list:
    """Indices ``j`` with ``a_j^2 < a_{j-1} a_{j+1}``."""
    a = _seq(p)
    return [j for j in range(1, len(a) - 1) if a[j] * a[j] < a[j - 1] * a[j + 1]]


def is_log_concave(p) -> bool:
    return not log_concavity_failures(p)


def is_ultra_log_concave(p, n: int | None = None) -> bool:
    """Log-concavity of ``a_j / C(n, j)``, tested by cross-multiplication."""
    a = _seq(p)
    n = _center(a, n)
    a = _pad(a, n)
    for j in range(1, n):
        lhs = a[j] * a[j] * comb(n, j - 1) * comb(n, j + 1)
        rhs = a[j - 1] * a[j + 1] * comb(n, j) ** 2
        if lhs < rhs:
            return False
    return True


@dataclass(frozen=True)
class GammaVector:
    gammas: tuple
    n: int

    @property
    def nonnegative(self) -> bool:
        return all(g >= 0 for g in self.gammas)

    def rebuild(self) -> IntPoly:
        """``sum_k gamma_k t^k (1+t)^(n-2k)``."""
        out = IntPoly(())
        for k, g in enumerate(self.gammas):
            out = out + (IntPoly((1, 1)) ** (self.n - 2 * k)).shift(k) * g
        return out


def gamma_vector(p, n: int | None = None) -> GammaVector:
    a = _seq(p)
    n = _center(a, n)
    if not is_symmetric(a, n):
        raise DomainError(f"{a} is not symmetric about {n}/2")
    rem = _pad(a, n)
    gammas = []
    for k in range(n // 2 + 1):
        g = rem[k]
        gammas.append(g)
        if g:
            basis = (IntPoly((1, 1)) ** (n - 2 * k)).shift(k)
            for i, c in enumerate(basis.coeffs):
                rem[i] -= g * c
    if any(rem):
        raise DomainError("gamma expansion left a remainder")
    return GammaVector(tuple(gammas), n)

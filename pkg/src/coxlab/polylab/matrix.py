"""Exact minors and total nonnegativity.

The decision procedure uses Neville elimination: a nonsingular square matrix
is totally nonnegative iff Neville elimination of ``A`` and of ``A^T`` runs
without row exchanges, with nonnegative multipliers and positive diagonal
pivots.  Singular inputs fall back to enumerating all minors (capped).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ..errors import DomainError, SizeError, ValidationError
from ..intpoly import IntPoly

BRUTE_FORCE_CAP = 10


@dataclass(frozen=True)
class ExactMatrix:
    rows: tuple

    @classmethod
    def of(cls, rows) -> ExactMatrix:
        rows = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValidationError("ragged matrix")
        return cls(rows)

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(tuple(zip(*self.rows)))

    def submatrix(self, rows, cols) -> list:
        return [[self.rows[i][j] for j in cols] for i in rows]


def _as_matrix(M) -> ExactMatrix:
    if isinstance(M, ExactMatrix):
        return M
    return ExactMatrix.of(M)


def bareiss_det(a) -> Fraction:
    """Fraction-free (Bareiss) determinant; exact for integer and rational entries."""
    a = [list(r) for r in a]
    n = len(a)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in a):
        raise ValidationError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            a[i][k] = 0
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1])


def minor(M, rows, cols) -> Fraction:
    M = _as_matrix(M)
    rows, cols = list(rows), list(cols)
    if len(rows) != len(cols):
        raise ValidationError("minor needs as many rows as columns")
    m, n = M.shape
    if any(not 0 <= i < m for i in rows) or any(not 0 <= j < n for j in cols):
        raise ValidationError("minor index out of range")
    return bareiss_det(M.submatrix(rows, cols))


def negative_minor(M):
    """A ``(rows, cols, value)`` triple with negative determinant, or None."""
    M = _as_matrix(M)
    m, n = M.shape
    for k in range(1, min(m, n) + 1):
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                d = bareiss_det(M.submatrix(rows, cols))
                if d < 0:
                    return rows, cols, d
    return None


def brute_force_tn(M) -> bool:
    """Oracle: every minor is nonnegative."""
    return negative_minor(M) is None


def _neville_pass(a) -> bool:
    """Neville elimination of a square matrix in place; False on a forbidden step."""
    n = len(a)
    for k in range(n - 1):
        col = [a[i][k] for i in range(k, n)]
        # zeros may only sit at the bottom of the column, else a row exchange is needed
        seen_zero = False
        for c in col:
            if c == 0:
                seen_zero = True
            elif seen_zero:
                return False
        for i in range(n - 1, k, -1):
            if a[i - 1][k] == 0:
                continue
            m = a[i][k] / a[i - 1][k]
            if m < 0:
                return False
            if m:
                for j in range(k, n):
                    a[i][j] -= m * a[i - 1][j]
    return all(a[i][i] > 0 for i in range(n))


def neville_tn(M):
    """Neville criterion for a square matrix.

    Returns True/False for nonsingular input and None when the matrix is
    singular (the criterion does not apply).
    """
    M = _as_matrix(M)
    m, n = M.shape
    if m != n:
        raise ValidationError("the Neville criterion needs a square matrix")
    if bareiss_det(M.rows) == 0:
        return None
    if any(x < 0 for r in M.rows for x in r):
        return False
    return _neville_pass([list(r) for r in M.rows]) and _neville_pass([list(r) for r in M.transpose().rows])


def _strip_zero_lines(M: ExactMatrix) -> ExactMatrix:
    rows = [r for r in M.rows if any(r)]
    if not rows:
        return ExactMatrix(())
    keep = [j for j in range(len(rows[0])) if any(r[j] for r in rows)]
    return ExactMatrix(tuple(tuple(r[j] for j in keep) for r in rows))


def is_totally_nonnegative(M, cap: int = BRUTE_FORCE_CAP) -> bool:
    M = _as_matrix(M)
    if any(x < 0 for r in M.rows for x in r):
        return False
    M = _strip_zero_lines(M)  # zero lines never create negative minors
    m, n = M.shape
    if m == 0:
        return True
    if m == n:
        verdict = neville_tn(M)
        if verdict is not None:
            return verdict
    if min(m, n) > cap:
        raise SizeError(f"singular or rectangular {m}x{n} matrix exceeds the all-minors cap {cap}")
    return brute_force_tn(M)


def toeplitz_matrix(p, size: int) -> ExactMatrix:
    """``(a_{j-i})`` truncated to ``size x size``, with ``a_k = 0`` outside the support."""
    a = list(p.coeffs) if isinstance(p, IntPoly) else [Fraction(c) for c in p]
    return ExactMatrix.of([[a[j - i] if 0 <= j - i < len(a) else 0 for j in range(size)] for i in range(size)])


def toeplitz_tp_check(p, size: int) -> bool:
    a = list(p.coeffs) if isinstance(p, IntPoly) else list(p)
    if any(c < 0 for c in a):
        raise DomainError("Toeplitz check needs nonnegative coefficients")
    return is_totally_nonnegative(toeplitz_matrix(a, size))

"""Odd length and Eulerian numbers.

Permutations are one-line tuples over ``1..n``.
"""

from __future__ import annotations

from itertools import permutations
from math import factorial

from ..errors import SizeError, ValidationError
from ..intpoly import IntPoly
from ..polylab.matrix import bareiss_det, is_totally_nonnegative
from ..polylab.sequences import gamma_vector, is_symmetric, is_unimodal, log_concavity_failures
from ..report import Report, failed, passed, stopwatch

ODD_LENGTH_CAP = 11
BRUTE_FORCE_CAP = 9


def parse_permutation(text: str) -> tuple:
    try:
        w = tuple(int(x) for x in text.strip().strip("[]").split(","))
    except ValueError:
        raise ValidationError(f"bad permutation {text!r}") from None
    check_permutation(w)
    return w


def check_permutation(w):
    if sorted(w) != list(range(1, len(w) + 1)):
        raise ValidationError(f"{w} is not a permutation of 1..{len(w)}")


def odd_length(w) -> int:
    """Inversions ``(i, j)`` of ``w`` whose positions have opposite parity."""
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if (j - i) % 2 and w[i] > w[j])


def odd_length_gf_bruteforce(n: int) -> IntPoly:
    if n > BRUTE_FORCE_CAP:
        raise SizeError(f"direct enumeration of S_{n} exceeds the cap {BRUTE_FORCE_CAP}")
    counts = {}
    for w in permutations(range(1, n + 1)):
        k = odd_length(w)
        counts[k] = counts.get(k, 0) + 1
    return IntPoly(counts.get(k, 0) for k in range(max(counts) + 1))


def odd_length_gf(n: int) -> IntPoly:
    """``L_n(x)``: fill positions left to right, tracking which values sit at odd and even positions.

    Placing value ``x`` at a position creates one odd-length inversion per larger
    value already placed at a position of the other parity.
    """
    if n < 1:
        raise ValidationError("n must be positive")
    if n > ODD_LENGTH_CAP:
        raise SizeError(f"n = {n} exceeds the odd-length cap {ODD_LENGTH_CAP}")
    states = {(0, 0): {0: 1}}
    for pos in range(n):
        nxt = {}
        for (odd, even), poly in states.items():
            mine, other = (odd, even) if pos % 2 == 0 else (even, odd)
            used = odd | even
            for x in range(n):
                if used >> x & 1:
                    continue
                gain = bin(other >> (x + 1)).count("1")
                m2 = mine | 1 << x
                key = (m2, other) if pos % 2 == 0 else (other, m2)
                tgt = nxt.setdefault(key, {})
                for k, c in poly.items():
                    tgt[k + gain] = tgt.get(k + gain, 0) + c
        states = nxt
    poly = {}
    for part in states.values():
        for k, c in part.items():
            poly[k] = poly.get(k, 0) + c
    return IntPoly(poly.get(k, 0) for k in range(max(poly) + 1))


def verify_Ln(n: int) -> Report:
    """Symmetry and unimodality of ``L_n`` (asserted from n = 5 on); log-concavity and gamma are data."""
    with stopwatch() as t:
        L = odd_length_gf(n)
        sym = is_symmetric(L.coeffs)
        uni = is_unimodal(L.coeffs)
        lc = log_concavity_failures(L.coeffs)
        gamma = gamma_vector(L.coeffs).nonnegative if sym else None
    ok = L(1) == factorial(n)
    wit = (f"L_{n}={L.render('x')}; symmetric={sym}; unimodal={uni}; "
           f"log_concave={not lc}{' (fails at ' + ','.join(map(str, lc)) + ')' if lc else ''}; "
           f"gamma_nonnegative={gamma}")
    if not ok:
        return failed("oddlength", f"n={n}", f"L_{n}(1) != {n}!: {wit}", engine_suspect=True, elapsed_ms=t[0])
    if n >= 5 and not (sym and uni):
        return failed("oddlength", f"n={n}", wit, elapsed_ms=t[0])
    return passed("oddlength", f"n={n}", wit, elapsed_ms=t[0])


# -- Eulerian numbers --------------------------------------------------------
def eulerian_table(N: int) -> list:
    """Rows ``A(n, .)`` for ``n = 0..N`` (``A(0, 0) = 1``), by the standard recurrence."""
    rows = [[1]]
    for n in range(1, N + 1):
        prev = rows[-1]
        row = []
        for k in range(n):
            a = (k + 1) * prev[k] if k < len(prev) else 0
            b = (n - k) * prev[k - 1] if 1 <= k <= len(prev) else 0
            row.append(a + b)
        rows.append(row)
    return rows


def eulerian_bruteforce(n: int) -> list:
    counts = [0] * max(n, 1)
    for w in permutations(range(n)):
        counts[sum(1 for i in range(n - 1) if w[i] > w[i + 1])] += 1
    return counts


def eulerian_matrix(N: int, rows_needed: int | None = None) -> list:
    """``(A(n+1, k))`` for ``0 <= n, k < N``."""
    R = rows_needed if rows_needed is not None else N
    table = eulerian_table(R + 1)
    return [[table[n + 1][k] if k <= n else 0 for k in range(N)] for n in range(R)]


def eulerian_tp_check(N: int) -> Report:
    with stopwatch() as t:
        ok = is_totally_nonnegative(eulerian_matrix(N))
    inst = f"{N}x{N}"
    if ok:
        return passed("eulerian-tp", inst, elapsed_ms=t[0])
    return failed("eulerian-tp", inst, "a negative minor exists", elapsed_ms=t[0])


def solid_minor(M, i, j, r) -> int:
    return int(bareiss_det([row[j:j + r + 1] for row in M[i:i + r + 1]]))


def eulerian_monotone_check(imax: int, jmax: int, rmax: int) -> Report:
    """Solid minors on rows ``i..i+r`` and columns ``j..j+r`` are weakly increasing in ``i``."""
    with stopwatch() as t:
        size = max(imax, jmax) + rmax + 1
        M = eulerian_matrix(size, size)
        bad = None
        for r in range(rmax + 1):
            for j in range(jmax + 1):
                seq = [solid_minor(M, i, j, r) for i in range(imax + 1)]
                drop = next((i for i in range(imax) if seq[i] > seq[i + 1]), None)
                if drop is not None:
                    bad = f"r={r} j={j} i={drop}: {seq[drop]} > {seq[drop + 1]}"
                    break
            if bad:
                break
    inst = f"i<={imax} j<={jmax} r<={rmax}"
    if bad:
        return failed("eulerian-monotone", inst, bad, elapsed_ms=t[0])
    return passed("eulerian-monotone", inst, elapsed_ms=t[0])

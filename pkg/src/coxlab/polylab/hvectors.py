"""Numerical face-vector conditions: Macaulay, g-theorem and Kruskal-Katona.

Also the two real-rooted h-polynomial scans that test whether real-rootedness
forces those numerical conditions.
"""

from __future__ import annotations

from math import comb

from ..errors import SizeError, ValidationError
from ..report import failed, passed
from .sequences import is_symmetric
from .sturm import real_rooted

SCAN_CAP = 10**7


def binomial_representation(a: int, i: int) -> list:
    """The ``i``-binomial representation ``a = C(n_i, i) + C(n_{i-1}, i-1) + ...``.

    Returned as ``[(n_i, i), (n_{i-1}, i-1), ...]`` with ``n_i > n_{i-1} > ... >= j >= 1``.
    """
    if a < 0 or i < 1:
        raise ValidationError(f"bad binomial representation request a={a}, i={i}")
    out = []
    k = i
    while a > 0 and k >= 1:
        n = k
        while comb(n + 1, k) <= a:
            n += 1
        out.append((n, k))
        a -= comb(n, k)
        k -= 1
    return out


def macaulay_bound(a: int, i: int) -> int:
    """``a^<i>``: the largest allowed successor of ``a`` in position ``i`` of an M-sequence."""
    return sum(comb(n + 1, k + 1) for n, k in binomial_representation(a, i))


def kk_shadow_bound(a: int, i: int) -> int:
    """Most ``i``-faces possible on ``a`` faces of dimension ``i-1`` (``a`` written i-binomially)."""
    return sum(comb(n, k + 1) for n, k in binomial_representation(a, i))


def _check_counts(v):
    v = [int(x) for x in v]
    if any(x < 0 for x in v):
        raise ValidationError(f"negative entry in {v}")
    return v


def is_m_sequence(g) -> bool:
    g = _check_counts(g)
    if not g or g[0] != 1:
        return False
    for i in range(1, len(g) - 1):
        if g[i + 1] > macaulay_bound(g[i], i):
            return False
    return True


def g_vector(h) -> list:
    h = list(h)
    d = len(h) - 1
    return [h[0]] + [h[i] - h[i - 1] for i in range(1, d // 2 + 1)]


def is_polytopal_h_vector(h) -> bool:
    """The g-theorem conditions: ``h`` symmetric and its g-vector an M-sequence."""
    h = _check_counts(h)
    if not h:
        raise ValidationError("empty h-vector")
    g = g_vector(h)
    return is_symmetric(h) and all(x >= 0 for x in g) and is_m_sequence(g)


def kruskal_katona_check(f) -> bool:
    """Is ``(f_0, f_1, ...)`` the f-vector of a simplicial complex (``f_0`` = vertices)?"""
    f = _check_counts(f)
    for k in range(1, len(f)):
        if f[k] > kk_shadow_bound(f[k - 1], k):
            return False
    return True


def _count_guard(n):
    if n > SCAN_CAP:
        raise SizeError(f"scan would enumerate {n} candidates (cap {SCAN_CAP})")


def _text(h):
    return ",".join(str(x) for x in h)


def scan_scphtp(d: int, hmax: int) -> list:
    """Real-rooted symmetric h-polynomials with ``h_0 = h_d = 1`` must satisfy the g-theorem."""
    if d < 1 or hmax < 0:
        raise ValidationError("need d >= 1 and hmax >= 0")
    _count_guard(hmax ** (d // 2))
    reports = []

    def rec(prefix):
        if len(prefix) == d // 2 + 1:
            h = prefix + prefix[: (d + 1) // 2][::-1]
            if not real_rooted(h):
                return
            inst = f"d={d} h={_text(h)}"
            if is_polytopal_h_vector(h):
                reports.append(passed("scphtp", inst))
            else:
                reports.append(failed("scphtp", inst, f"g={_text(g_vector(h))} is not an M-sequence"))
            return
        for x in range(1, hmax + 1):
            # real-rooted with positive coefficients implies log-concave; prune early
            if len(prefix) >= 2 and prefix[-1] ** 2 < prefix[-2] * x:
                break
            rec(prefix + [x])

    rec([1])
    return reports


def scan_kw(d: int, hmax: int, k: int) -> list:
    """Real-rooted ``h`` with ``h_0 < ... < h_k``: ``(h_1-h_0, ..., h_k-h_{k-1})`` passes Kruskal-Katona.

    ``h_0 = 1`` plays the role of the empty face, so the tested f-vector starts at vertices.
    """
    if d < 1 or hmax < 1 or not 1 <= k <= d:
        raise ValidationError("need d >= 1, hmax >= 1 and 1 <= k <= d")
    _count_guard((hmax + 1) ** d)
    reports = []

    def rec(h):
        j = len(h)
        if j == d + 1:
            if not real_rooted(h):
                return
            f = [h[i] - h[i - 1] for i in range(1, k + 1)]
            inst = f"d={d} k={k} h={_text(h)}"
            if kruskal_katona_check(f):
                reports.append(passed("kw", inst))
            else:
                reports.append(failed("kw", inst, f"f={_text(f)} violates Kruskal-Katona"))
            return
        lo = h[-1] + 1 if j <= k else 1
        for x in range(lo, hmax + 1):
            if j >= 2 and h[-1] ** 2 < h[-2] * x:
                break
            rec(h + [x])

    rec([1])
    return reports

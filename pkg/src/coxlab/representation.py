"""Faithful exact actions used to identify group elements.

Two backends share one small interface:

* :class:`GeometricRep` -- the Tits geometric representation over Q(sqrt(d)).
  Matrix entries live in the ring Z[2cos(pi/m)], so they are held as pairs of
  integers ``(A, B)`` meaning ``(A + B*sqrt(d)) / 2`` and stored flat in a
  tuple that doubles as the hash key of the element.
* :class:`DihedralRep` -- I2(m) for any m, acting on the 2m roots in angular
  order by ``k -> eps*k + c (mod 2m)``. Used when cos(pi/m) is not in a
  supported quadratic field.

Both expose: ``identity()``, ``right(key, s)``, ``left(s, key)``,
``root_negative(key, s)`` (is ``w(alpha_s)`` a negative root),
``root(key, s)`` (the positive root ``+-w(alpha_s)``), ``in_open_cone`` and
``matrix(key)``.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import UnsupportedFieldError
from .quadext import QuadExt

INF = 0  # Coxeter matrix encoding of "no relation"

# 2cos(pi/m) as a doubled pair (A, B) over the radicand of that m
_TWO_COS = {
    2: (1, (0, 0)),
    3: (1, (2, 0)),
    4: (2, (0, 2)),
    5: (5, (1, 1)),
    6: (3, (0, 2)),
    INF: (1, (4, 0)),
}


def radicand_for(entries) -> int:
    """The single radicand covering all Coxeter-matrix entries."""
    needed = set()
    for m in entries:
        if m not in _TWO_COS:
            raise UnsupportedFieldError(f"m = {m} needs cos(pi/{m}) outside the supported fields")
        d = _TWO_COS[m][0]
        if d != 1:
            needed.add(d)
    if len(needed) > 1:
        raise UnsupportedFieldError(
            f"matrix needs {len(needed)} distinct irrationalities (sqrt of {sorted(needed)})"
        )
    return needed.pop() if needed else 1


class GeometricRep:
    kind = "geometric"

    def __init__(self, m):
        n = len(m)
        self.n = n
        off = [m[i][j] for i in range(n) for j in range(n) if i != j]
        self.d = radicand_for(off)
        # c[s][j] = -2B(alpha_s, alpha_j) (doubled pair); c[s][s] = -2
        self.c = []
        for s in range(n):
            row = []
            for j in range(n):
                if j == s:
                    row.append((-4, 0))
                else:
                    row.append(_TWO_COS[m[s][j]][1])
            self.c.append(row)
        self.nbrs = [[j for j in range(n) if self.c[s][j] != (0, 0)] for s in range(n)]

    def identity(self):
        n = self.n
        flat = []
        for i in range(n):
            for j in range(n):
                flat.extend((2, 0) if i == j else (0, 0))
        return tuple(flat)

    def _mul(self, A1, B1, A2, B2):
        d = self.d
        return (A1 * A2 + d * B1 * B2) // 2, (A1 * B2 + A2 * B1) // 2

    def right(self, key, s):
        # M_w M_s = M_w + (column s of M_w) c_s^T
        n = self.n
        out = list(key)
        cs = self.c[s]
        for i in range(n):
            base = 2 * (i * n + s)
            A, B = key[base], key[base + 1]
            if A == 0 and B == 0:
                continue
            for j in self.nbrs[s]:
                ca, cb = cs[j]
                x, y = self._mul(A, B, ca, cb)
                p = 2 * (i * n + j)
                out[p] += x
                out[p + 1] += y
        return tuple(out)

    def left(self, s, key):
        # M_s M_w: row s becomes sum_j c_sj row_j + row_s
        n = self.n
        out = list(key)
        cs = self.c[s]
        for k in range(n):
            accA = key[2 * (s * n + k)]
            accB = key[2 * (s * n + k) + 1]
            for j in self.nbrs[s]:
                A, B = key[2 * (j * n + k)], key[2 * (j * n + k) + 1]
                if A == 0 and B == 0:
                    continue
                x, y = self._mul(A, B, cs[j][0], cs[j][1])
                accA += x
                accB += y
            out[2 * (s * n + k)] = accA
            out[2 * (s * n + k) + 1] = accB
        return tuple(out)

    def _sign(self, A, B):
        if B == 0:
            return (A > 0) - (A < 0)
        if A == 0 or (A > 0) == (B > 0):
            return 1 if B > 0 else -1
        diff = A * A - self.d * B * B
        sa = 1 if A > 0 else -1
        return sa * ((diff > 0) - (diff < 0))

    def root_negative(self, key, s) -> bool:
        n = self.n
        for i in range(n):
            p = 2 * (i * n + s)
            sg = self._sign(key[p], key[p + 1])
            if sg:
                return sg < 0
        raise AssertionError("zero column in a group element")

    def root(self, key, s):
        n = self.n
        col = [(key[2 * (i * n + s)], key[2 * (i * n + s) + 1]) for i in range(n)]
        if self.root_negative(key, s):
            col = [(-a, -b) for a, b in col]
        return tuple(self._q(a, b) for a, b in col)

    def _q(self, A, B):
        return QuadExt(Fraction(A, 2), Fraction(B, 2), self.d)

    def matrix(self, key):
        n = self.n
        return tuple(
            tuple(self._q(key[2 * (i * n + j)], key[2 * (i * n + j) + 1]) for j in range(n))
            for i in range(n)
        )

    def generator_matrix(self, s):
        return self.matrix(self.right(self.identity(), s))

    def in_open_cone(self, alpha, beta, gamma) -> bool:
        """Is ``gamma = lam*alpha + mu*beta`` with ``lam, mu > 0``?"""
        n = self.n
        for p in range(n):
            for r in range(p + 1, n):
                det = alpha[p] * beta[r] - alpha[r] * beta[p]
                if det.is_zero():
                    continue
                lam = (gamma[p] * beta[r] - gamma[r] * beta[p]) / det
                mu = (alpha[p] * gamma[r] - alpha[r] * gamma[p]) / det
                if lam.sign() <= 0 or mu.sign() <= 0:
                    return False
                return all(lam * alpha[k] + mu * beta[k] == gamma[k] for k in range(n))
        return False


class DihedralRep:
    """I2(m) acting on root indices ``0..2m-1`` (positive roots are ``0..m-1``).

    alpha_1 is root 0 and alpha_2 is root m-1; root k sits at angle k*pi/m.
    """

    kind = "dihedral"

    def __init__(self, m: int):
        self.m = m
        self.n = 2
        self.d = 1
        self._gen = [(-1, m), (-1, m - 2)]
        self._simple = [0, m - 1]

    def identity(self):
        return (1, 0)

    def right(self, key, s):
        eps, c = key
        es, cs = self._gen[s]
        return (eps * es, (eps * cs + c) % (2 * self.m))

    def left(self, s, key):
        eps, c = key
        es, cs = self._gen[s]
        return (es * eps, (es * c + cs) % (2 * self.m))

    def _image(self, key, k):
        eps, c = key
        return (eps * k + c) % (2 * self.m)

    def root_negative(self, key, s) -> bool:
        return self._image(key, self._simple[s]) >= self.m

    def root(self, key, s):
        k = self._image(key, self._simple[s])
        return (k - self.m,) if k >= self.m else (k,)

    def matrix(self, key):
        """Permutation matrix of the action on the 2m roots."""
        size = 2 * self.m
        img = [self._image(key, k) for k in range(size)]
        return tuple(
            tuple(QuadExt(1 if img[j] == i else 0) for j in range(size)) for i in range(size)
        )

    def generator_matrix(self, s):
        return self.matrix(self.right(self.identity(), s))

    def in_open_cone(self, alpha, beta, gamma) -> bool:
        lo, hi = sorted((alpha[0], beta[0]))
        return lo < gamma[0] < hi

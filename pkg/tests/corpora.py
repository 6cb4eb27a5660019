"""Seeded test corpora shared by the unit and acceptance suites."""

import random
from fractions import Fraction


def _tn_product(rng, n):
    """Random TN matrix: product of elementary bidiagonal factors and a positive diagonal."""
    M = [[Fraction(int(i == j) * rng.randint(1, 3)) for j in range(n)] for i in range(n)]
    for _ in range(rng.randint(0, 2 * n)):
        i = rng.randrange(n - 1) if n > 1 else 0
        c = rng.randint(0, 3)
        lower = rng.random() < 0.5
        E = [[Fraction(int(r == s)) for s in range(n)] for r in range(n)]
        if n > 1:
            if lower:
                E[i + 1][i] = Fraction(c)
            else:
                E[i][i + 1] = Fraction(c)
        M = [[sum(M[r][k] * E[k][s] for k in range(n)) for s in range(n)] for r in range(n)]
    return M


def random_tn_corpus(seed, count):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.choice((1, 2, 2, 3, 3, 3, 4, 4))
        kind = rng.random()
        if kind < 0.4:
            M = _tn_product(rng, n)
        elif kind < 0.7:
            M = _tn_product(rng, n)
            i, j = rng.randrange(n), rng.randrange(n)
            M[i][j] += rng.choice((-1, 1, 2))
        else:
            M = [[Fraction(rng.choice((0, 0, 1, 1, 2, 3, -1))) for _ in range(n)] for _ in range(n)]
        out.append(M)
    return out


def poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def real_rooted_corpus():
    rng = random.Random(5)
    out = []
    for _ in range(25):
        p = [Fraction(1)]
        for _ in range(rng.randint(1, 4)):
            p = poly_mul(p, [Fraction(1), Fraction(rng.randint(1, 4), rng.randint(1, 2))])
        out.append(p)
    return out

"""Window (one-line) notation for the classical types, used only for I/O.

Right action: ``w * s_i`` swaps positions ``i, i+1`` of the window;
in type B ``w * s_0`` negates position 1, in type D ``w * s_0`` replaces the
first two entries ``(x, y)`` by ``(-y, -x)``. Windows are 1-based values;
generator indices here are the internal 0-based indices of
:class:`~coxlab.coxeter.CoxeterSystem`.
"""

from __future__ import annotations

from .errors import ParseError


def _size(tag: str, rank: int) -> int:
    return rank + 1 if tag == "A" else rank


def _position(tag: str, s: int) -> int:
    # first (0-based) window position touched by transposition generator s
    return s if tag == "A" else s - 1


def act(tag: str, w: list, s: int) -> list:
    """Right-multiply the window ``w`` by the generator with index ``s``."""
    w = list(w)
    if tag != "A" and s == 0:
        if tag == "B":
            w[0] = -w[0]
        else:
            w[0], w[1] = -w[1], -w[0]
        return w
    p = _position(tag, s)
    w[p], w[p + 1] = w[p + 1], w[p]
    return w


def is_descent(tag: str, w: list, s: int) -> bool:
    if tag != "A" and s == 0:
        return w[0] < 0 if tag == "B" else w[0] + w[1] < 0
    p = _position(tag, s)
    return w[p] > w[p + 1]


def validate(tag: str, rank: int, w: list):
    n = _size(tag, rank)
    if len(w) != n:
        raise ParseError(f"window of length {len(w)}, expected {n}")
    if tag == "A":
        if sorted(w) != list(range(1, n + 1)):
            raise ParseError(f"{w} is not a permutation of 1..{n}")
        return
    if sorted(abs(x) for x in w) != list(range(1, n + 1)):
        raise ParseError(f"{w} is not a signed permutation of 1..{n}")
    if tag == "D" and sum(1 for x in w if x < 0) % 2:
        raise ParseError(f"{w} has an odd number of negative entries (not in type D)")


def window_to_word(tag: str, rank: int, w: list) -> list:
    """A reduced word for the window, found by repeatedly stripping right descents."""
    validate(tag, rank, w)
    w = list(w)
    stripped = []
    while True:
        s = next((s for s in range(rank) if is_descent(tag, w, s)), None)
        if s is None:
            break
        w = act(tag, w, s)
        stripped.append(s)
    return stripped[::-1]


def word_to_window(tag: str, rank: int, word) -> list:
    w = list(range(1, _size(tag, rank) + 1))
    for s in word:
        w = act(tag, w, s)
    return w


def length(tag: str, w: list) -> int:
    """Combinatorial length formula (inversion counts), used as an oracle."""
    n = len(w)
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])
    if tag == "A":
        return inv
    neg_inv = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] + w[j] < 0)
    if tag == "B":
        return inv + neg_inv + sum(1 for x in w if x < 0)
    return inv + neg_inv

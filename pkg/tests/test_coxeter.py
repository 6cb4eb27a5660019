from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxlab import build_system, parse_subset
from coxlab.coxeter import format_subset
from coxlab.errors import DomainError, ParseError
from coxlab import windows

from conftest import system


@pytest.mark.parametrize("name,order", [
    ("A2", 6), ("A3", 24), ("A4", 120), ("B3", 48), ("B4", 384), ("D4", 192),
    ("H3", 120), ("F4", 1152), ("I2(5)", 10), ("I2(7)", 14),
])
def test_group_orders(name, order):
    assert system(name).order == order


@pytest.mark.parametrize("name", ["A3", "B3", "D4", "H3", "F4", "I2(5)"])
def test_braid_relations(name):
    W = system(name)
    for s, t in product(range(W.n), repeat=2):
        m = W.matrix[s, t]
        assert W.from_word([s, t] * m).is_identity()
        if s != t:
            # no smaller power collapses
            for k in range(1, m):
                assert not W.from_word([s, t] * k).is_identity()


@pytest.mark.parametrize("name", ["A3", "B3", "H3"])
def test_length_equals_left_inversions(name):
    W = system(name)
    for w in W.elements():
        assert len(W.n_left(w)) == w.length == len(w.word)


@pytest.mark.parametrize("name", ["A3", "B3", "I2(5)"])
def test_words_equal_iff_matrices_equal(name):
    W = system(name)
    mats = {}
    for w in W.elements():
        mats.setdefault(w.matrix, set()).add(w.index)
    assert all(len(v) == 1 for v in mats.values())
    # a non-reduced word evaluates to the same element as its reduction
    for w in W.elements(3):
        for s in range(W.n):
            assert W.from_word(list(w.word) + [s, s]) == w


def _subword_products(W, v):
    out = set()
    for mask in product((0, 1), repeat=len(v.word)):
        out.add(W.from_word([s for s, b in zip(v.word, mask) if b]).index)
    return out


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_bruhat_matches_subword_property(name):
    W = system(name)
    for v in W.elements():
        below = _subword_products(W, v)
        for u in W.elements():
            assert (u <= v) == (u.index in below)


def _window_matrix(win):
    n = len(win)
    M = np.zeros((n, n), dtype=int)
    for i, x in enumerate(win):
        M[abs(x) - 1, i] = 1 if x > 0 else -1
    return M


@pytest.mark.parametrize("name", ["A3", "A4", "B3", "B4", "D4"])
def test_reflections_are_the_rank_one_involutions(name):
    W = system(name)
    oracle = set()
    for w in W.elements():
        if w.is_identity() or not (w * w).is_identity():
            continue
        M = _window_matrix(W.window(w))
        if np.linalg.matrix_rank(M - np.eye(len(M), dtype=int)) == 1:
            oracle.add(w.index)
    assert {r.element.index for r in W.reflections()} == oracle


@pytest.mark.parametrize("name", ["A4", "B4", "D4"])
def test_length_matches_window_inversions(name):
    W = system(name)
    for w in W.elements():
        assert windows.length(W.tag, W.window(w)) == w.length


def test_reflection_length_series():
    assert system("A2").reflection_length_series().render("x") == "2x+x^3"
    assert system("I2(5)").reflection_length_series().render("x") == "2x+2x^3+x^5"
    # reflections of the affine group: three per odd length
    assert system("At2").reflection_length_series(7).coeffs == (0, 3, 0, 3, 0, 3, 0, 3)


def test_reflection_count_matches_half_the_roots():
    for name, count in [("A3", 6), ("B3", 9), ("H3", 15), ("F4", 24), ("D4", 12)]:
        assert len(system(name).reflections()) == count


def test_infinite_group_needs_a_cap():
    with pytest.raises(DomainError):
        system("At2").order


def test_labels_and_parsing():
    B = system("B5")
    assert B.generator_name(0) == "s0"
    assert system("A3").generator_name(0) == "s1"
    J = parse_subset(B, "-s3")
    assert J == frozenset(range(5)) - {B.parse_generator("s3")}
    assert format_subset(B, J) == "0,1,2,4"
    assert parse_subset(B, "-") == frozenset()
    with pytest.raises(ParseError):
        B.parse_generator("s9")
    with pytest.raises(ParseError):
        system("H3").parse_element("[1,2,3]")


@pytest.mark.parametrize("name", ["A4", "B4", "D4"])
def test_window_and_word_round_trip(name):
    W = system(name)
    for w in W.elements():
        assert W.parse_element(W.format_window(w)) == w
        assert W.parse_element(W.format_element(w) or "e") == w


def test_right_action_on_windows():
    # multiplying by s on the right swaps window positions
    A = system("A3")
    w = A.parse_element("[2,1,3,4]") * A.parse_element("[1,3,2,4]")
    assert A.window(w) == [2, 3, 1, 4]


def test_descents_match_window_convention():
    A = system("A4")
    for w in A.elements():
        win = A.window(w)
        rd = {i for i in range(4) if win[i] > win[i + 1]}
        assert w.right_descents() == rd


words = st.lists(st.integers(0, 2), max_size=14)


@settings(max_examples=200, deadline=None)
@given(words, words)
def test_inverse_of_product(a, b):
    W = system("B3")
    x, y = W.from_word(a), W.from_word(b)
    assert (x * y).inverse() == y.inverse() * x.inverse()
    assert (x * y).length <= x.length + y.length
    assert (x.length - y.length) % 2 == (len(a) - len(b)) % 2


@settings(max_examples=200, deadline=None)
@given(words)
def test_descent_lowers_length(a):
    W = system("H3")
    w = W.from_word(a)
    for s in range(W.n):
        ws = w * s
        assert (s in w.right_descents()) == (ws.length < w.length)
        assert abs(ws.length - w.length) == 1


@settings(max_examples=100, deadline=None)
@given(st.permutations([1, 2, 3, 4, 5]), st.lists(st.booleans(), min_size=5, max_size=5))
def test_signed_window_length(perm, signs):
    win = [-x if s else x for x, s in zip(perm, signs)]
    B = system("B5")
    w = B.parse_element("[" + ",".join(map(str, win)) + "]")
    assert B.window(w) == win
    assert w.length == windows.length("B", win)

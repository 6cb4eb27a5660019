import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxlab.cdindex import bruhat_paths, default_ordering, longest_element
from coxlab.errors import ConsistencyError, DomainError, ParseError, QuotientMembershipError
from coxlab.intpoly import IntPoly
from coxlab.kl import (
    ParabolicContext, PolyCache, cache_load, cache_store, context, kl_poly, laurent_check,
    q_from_rtilde, q_poly, r_poly, rtilde, rtilde_from_r,
)

from conftest import system


def _classical_kl(W):
    """Oracle: the mu-recursion on C'_s C'_v, with no R-polynomials involved."""
    els = list(W.elements())
    P = {}
    zero = IntPoly(())

    def get(x, w):
        return P.get((x.index, w.index), zero)

    for w in els:
        if w.is_identity():
            P[(0, 0)] = IntPoly((1,))
            continue
        s = min(w.left_descents())
        v = s * w
        lv = v.length
        mus = []
        for z in els:
            if z.length < lv and (lv - z.length) % 2 == 1 and s in z.left_descents() and z <= v:
                c = get(z, v)[(lv - z.length - 1) // 2]
                if c:
                    mus.append((z, c))
        for x in els:
            if not x <= w:
                continue
            sx = s * x
            c = 1 if sx.length < x.length else 0
            val = get(sx, v).shift(1 - c) + get(x, v).shift(c)
            for z, mu in mus:
                val = val - get(x, z).shift((lv - z.length + 1) // 2) * mu
            P[(x.index, w.index)] = val
    return P


@pytest.mark.parametrize("name", ["A3", "B3", "H3", "I2(6)"])
def test_kl_against_mu_recursion(name):
    W = system(name)
    oracle = _classical_kl(W)
    for (xi, wi), val in oracle.items():
        assert kl_poly(W.element(xi), W.element(wi)) == val


def test_known_singular_pairs_in_s4():
    A = system("A3")
    e = A.identity
    assert kl_poly(e, A.parse_element("[3,4,1,2]")).render() == "1+q"
    assert kl_poly(e, A.parse_element("[4,2,3,1]")).render() == "1+q"
    assert kl_poly(e, longest_element(A)).render() == "1"


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_nonnegative_and_normalised(name):
    W = system(name)
    for v in W.elements():
        for u in W.elements():
            if u <= v:
                P = kl_poly(u, v)
                assert P.nonnegative() and P[0] == 1
                assert u == v or P.degree <= (v.length - u.length - 1) // 2
            else:
                assert kl_poly(u, v).is_zero()


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_deodhar_relations(name):
    # P^{J,q}_{u,v} = sum_{w in W_J} (-1)^l(w) P_{wu,v} and P^{J,-1}_{u,v} = P_{w_J u, w_J v}
    W = system(name)
    els = list(W.elements())
    for r in (1, 2):
        for J in combinations(range(W.n), r):
            J = frozenset(J)
            WJ = [w for w in els if set(w.word) <= J]
            wJ = max(WJ, key=lambda z: z.length)
            cq, cm = context(W, J, "q"), context(W, J, "-1")
            quot = [w for w in els if W.in_quotient(w, J)]
            for u in quot:
                for v in quot:
                    alt = IntPoly(())
                    for w in WJ:
                        alt = alt + kl_poly(w * u, v) * (-1) ** w.length
                    assert cq.p(u, v) == alt
                    assert cm.p(u, v) == kl_poly(wJ * u, wJ * v)


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_empty_j_types_coincide(name):
    W = system(name)
    cq, cm = context(W, (), "q"), context(W, (), "-1")
    for u in W.elements():
        for v in W.elements():
            assert cq.p(u, v) == cm.p(u, v)
            assert cq.r(u, v) == cm.r(u, v)


@pytest.mark.parametrize("pick", ["max", "random"])
@pytest.mark.parametrize("name,J", [("A3", ()), ("B3", (0,)), ("A3", (1, 2)), ("H3", ())])
def test_descent_choice_is_irrelevant(name, J, pick):
    W = system(name)
    rng = random.Random(7)
    chooser = max if pick == "max" else (lambda ds: rng.choice(sorted(ds)))
    for x in ("q", "-1"):
        ref = ParabolicContext(W, J, x)
        alt = ParabolicContext(W, J, x, descent=chooser)
        quot = [w for w in W.elements() if ref.in_quotient(w.index)]
        for u in quot:
            for v in quot:
                assert ref.r(u, v) == alt.r(u, v)
                assert ref.p(u, v) == alt.p(u, v)


@pytest.mark.parametrize("name,J", [("A3", ()), ("B3", (1,)), ("A3", (0, 2)), ("I2(5)", (0,))])
def test_defining_equation_residual(name, J):
    W = system(name)
    for x in ("q", "-1"):
        ctx = context(W, J, x)
        quot = [w for w in W.elements() if ctx.in_quotient(w.index)]
        for u in quot:
            for v in quot:
                assert ctx.residual(u, v).is_zero()


def test_parabolic_example_b5():
    B = system("B5")
    ctx = context(B, frozenset({0, 1, 2, 4}), "q")
    assert ctx.p(B.parse_element("[4,1,5,2,3]"), B.parse_element("[5,-4,1,2,3]")).render() == "q"
    assert ctx.p(B.parse_element("[1,4,2,5,3]"), B.parse_element("[-4,1,5,2,3]")).is_zero()


def test_quotient_membership_is_enforced():
    A = system("A3")
    ctx = context(A, (0,), "q")
    with pytest.raises(QuotientMembershipError):
        ctx.p(A.from_word([0]), longest_element(A))
    with pytest.raises(DomainError):
        ParabolicContext(A, (), "x")


def test_r_polynomials_small_cases():
    A = system("A2")
    e, s = A.identity, A.from_word([0])
    assert r_poly(e, s).render() == "-1+q"
    assert r_poly(e, e).render() == "1"
    assert r_poly(s, e).is_zero()


@pytest.mark.parametrize("name", ["A3", "B3", "H3"])
def test_rtilde_counts_increasing_paths(name):
    # Rt_{u,v}(t) = sum of t^length over label-increasing Bruhat paths
    W = system(name)
    order = default_ordering(W)
    pos = order.position
    els = list(W.elements())
    for u in els[::3]:
        for v in els:
            if u < v and v.length - u.length <= 6:
                counts = {}
                for verts, labels in bruhat_paths(u, v):
                    ks = [pos[t.index] for t in labels]
                    if all(a < b for a, b in zip(ks, ks[1:])):
                        counts[len(labels)] = counts.get(len(labels), 0) + 1
                expect = IntPoly([counts.get(k, 0) for k in range(max(counts) + 1)])
                assert rtilde(u, v) == expect


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_rtilde_shape_and_laurent_identity(name):
    W = system(name)
    for u in W.elements():
        for v in W.elements():
            if u <= v:
                ell = v.length - u.length
                rt = rtilde(u, v)
                assert rt.nonnegative() and rt.degree == ell and rt[ell] == 1
                assert laurent_check(r_poly(u, v), rt, ell)
                Q = q_poly(u, v)
                assert Q(1) == sum(rt.coeffs)


def test_a5_rtilde_and_q():
    A = system("A5")
    u, v = A.parse_element("[2,1,3,4,6,5]"), A.parse_element("[5,6,3,4,1,2]")
    rt = rtilde(u, v)
    assert rt.render("t") == "t^2+4t^4+6t^6+5t^8+t^10"
    assert q_poly(u, v).render("q") == "q+4q^2+6q^3+5q^4+q^5"


def test_rtilde_rejects_malformed_r():
    with pytest.raises(ConsistencyError):
        rtilde_from_r(IntPoly((1, 1)), 1)
    with pytest.raises(ConsistencyError):
        rtilde_from_r(IntPoly((0, 0, 0, 1)), 2)
    assert q_from_rtilde(IntPoly((0, 1, 0, 2)), 3) == IntPoly((1, 2))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=0, max_size=8), st.integers(0, 3))
def test_rtilde_round_trip(cs, parity):
    # build Rt with the right parity, push it to R and back
    ell = 2 * len(cs) + parity
    rt = [0] * (ell + 1)
    for j, c in enumerate(cs):
        rt[ell - 2 * (j + 1)] = c
    rt[ell] = 1
    rt = IntPoly(rt)
    R = IntPoly(())
    for k, c in enumerate(rt.coeffs):
        if c:
            j = (ell - k) // 2
            R = R + (IntPoly((-1, 1)) ** k).shift(j) * c
    assert rtilde_from_r(R, ell) == rt
    assert laurent_check(R, rt, ell)


def test_cache_round_trip(tmp_path):
    A = system("A2")
    cache = PolyCache()
    ctx = ParabolicContext(A, (), "q", cache)
    w0 = longest_element(A)
    assert ctx.p(A.identity, w0).render() == "1"
    path = tmp_path / "sub" / "polys.cache"
    cache_store(cache, path)
    text = path.read_text()
    assert "P|A2|u=|v=s1.s2.s1|J=-|x=q|coeffs=1\n" in text
    again = cache_load(path)
    assert again.items() == cache.items()
    # a fresh context answering from the cache gives the same polynomials
    ctx2 = ParabolicContext(A, (), "q", again)
    for u in A.elements():
        assert ctx2.p(u, w0) == ctx.p(u, w0)


def test_cache_conflicts_and_bad_lines(tmp_path):
    cache = PolyCache()
    key = ("P", "A2", "", "s1", "-", "q")
    cache.put(key, IntPoly((1,)))
    cache.put(key, IntPoly((1,)))
    with pytest.raises(ConsistencyError):
        cache.put(key, IntPoly((2,)))
    bad = tmp_path / "bad.cache"
    bad.write_text("P|A2|u=|v=s1|J=-|x=q|coeffs=1\nnot a line\n")
    with pytest.raises(ParseError, match=":2:"):
        cache_load(bad)

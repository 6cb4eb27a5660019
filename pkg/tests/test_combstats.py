import random
from itertools import combinations, permutations, product
from math import factorial

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxlab.combstats.graphs import (
    Graph, acyclic_count, acyclic_count_bruteforce, acyclic_count_sources, canonical_form, chromatic_poly,
    enumerate_graphs, enumerate_graphs_labeled, falling, rising_basis, tau_poly, tau_real_rooted_scan,
    tau_via_partitions,
)
from coxlab.combstats.permutations import (
    eulerian_bruteforce, eulerian_matrix, eulerian_monotone_check, eulerian_table, eulerian_tp_check,
    odd_length, odd_length_gf, odd_length_gf_bruteforce, parse_permutation, solid_minor, verify_Ln,
)
from coxlab.errors import ParseError, SizeError, ValidationError
from coxlab.intpoly import IntPoly
from coxlab.polylab.matrix import brute_force_tn
from coxlab.polylab.sequences import is_symmetric, is_unimodal


# -- odd length ---------------------------------------------------------------------------
def test_odd_length_by_hand():
    assert odd_length((1, 2, 3)) == 0
    assert odd_length((2, 1, 3)) == 1
    assert odd_length((3, 2, 1)) == 2  # (1,2) and (2,3); (1,3) is even
    assert parse_permutation("[2,1,3]") == (2, 1, 3)
    with pytest.raises(ValidationError):
        parse_permutation("[1,1,3]")


@pytest.mark.parametrize("n", range(1, 9))
def test_odd_length_dp_matches_enumeration(n):
    assert odd_length_gf(n) == odd_length_gf_bruteforce(n)


@pytest.mark.parametrize("n", range(5, 10))
def test_odd_length_symmetric_unimodal(n):
    L = odd_length_gf(n)
    assert L(1) == factorial(n)
    assert is_symmetric(L.coeffs) and is_unimodal(L.coeffs)
    assert verify_Ln(n).status == "pass"


@pytest.mark.parametrize("n", range(1, 8))
def test_odd_length_reversal_identity(n):
    top = odd_length(tuple(range(n, 0, -1)))
    for w in permutations(range(1, n + 1)):
        assert odd_length(w[::-1]) == top - odd_length(w)


def test_odd_length_caps():
    with pytest.raises(SizeError):
        odd_length_gf(12)
    with pytest.raises(SizeError):
        odd_length_gf_bruteforce(10)


# -- Eulerian -------------------------------------------------------------------------------
@pytest.mark.parametrize("n", range(1, 8))
def test_eulerian_table_matches_descent_counts(n):
    assert eulerian_table(n)[n] == eulerian_bruteforce(n)


def test_eulerian_small_checks():
    assert eulerian_table(4)[4] == [1, 11, 11, 1]
    M = eulerian_matrix(6)
    assert M[0][:2] == [1, 0] and M[2][:3] == [1, 4, 1]
    assert brute_force_tn(M)
    assert eulerian_tp_check(8).status == "pass"
    assert eulerian_monotone_check(6, 6, 2).status == "pass"
    assert solid_minor(M, 1, 0, 1) == 1 * 4 - 1 * 1


# -- graphs ---------------------------------------------------------------------------------
def _random_graph(rng, p, density=None):
    density = rng.random() if density is None else density
    return Graph.of(p, [e for e in combinations(range(p), 2) if rng.random() < density])


def _nx(G):
    H = nx.Graph()
    H.add_nodes_from(range(G.p))
    H.add_edges_from(G.edges)
    return H


def test_graph_text_and_operations():
    G = Graph.parse("4\n1 2\n2 3\n3 4\n")
    assert G.m == 3 and G.is_connected()
    assert Graph.parse(G.to_text()) == G
    assert G.contract((0, 1)).p == 3
    with pytest.raises(ParseError):
        Graph.parse("3\n1 1\n")
    with pytest.raises(ParseError):
        Graph.parse("two\n")


@pytest.mark.parametrize("p,total,connected", [(1, 1, 1), (2, 2, 1), (3, 4, 2), (4, 11, 6), (5, 34, 21),
                                               (6, 156, 112)])
def test_graph_class_counts(p, total, connected):
    assert len(enumerate_graphs(p)) == total
    assert len(enumerate_graphs(p, connected=True)) == connected


@pytest.mark.parametrize("p", range(1, 6))
def test_enumeration_matches_labelled_oracle(p):
    a = sorted(canonical_form(G) for G in enumerate_graphs(p))
    b = sorted(canonical_form(G) for G in enumerate_graphs_labeled(p))
    assert a == b


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_canonical_form_vs_networkx(seed):
    rng = random.Random(seed)
    p = rng.randint(1, 7)
    G = _random_graph(rng, p)
    if rng.random() < 0.5:
        perm = list(range(p))
        rng.shuffle(perm)
        H = Graph.of(p, [(perm[a], perm[b]) for a, b in G.edges])
    else:
        H = _random_graph(rng, p, len(G.edges) / max(1, p * (p - 1) // 2))
    assert (canonical_form(G) == canonical_form(H)) == nx.is_isomorphic(_nx(G), _nx(H))


def test_chromatic_known_families():
    x = IntPoly((0, 1))
    for n in range(1, 7):
        assert chromatic_poly(Graph.complete(n)) == falling(n)
        path = Graph.of(n, [(i, i + 1) for i in range(n - 1)])
        assert chromatic_poly(path) == x * IntPoly((-1, 1)) ** (n - 1)
    for n in range(3, 8):
        cycle = Graph.of(n, [(i, (i + 1) % n) for i in range(n)])
        assert chromatic_poly(cycle) == IntPoly((-1, 1)) ** n + IntPoly(((-1) ** n,)) * IntPoly((-1, 1))


def _proper_colourings(G, k):
    count = 0
    for cols in product(range(k), repeat=G.p):
        count += all(cols[a] != cols[b] for a, b in G.edges)
    return count


def test_chromatic_memo_matches_plain_recursion():
    rng = random.Random(99)
    for _ in range(100):
        G = _random_graph(rng, rng.randint(1, 7))
        assert chromatic_poly(G, memo=True) == chromatic_poly(G, memo=False)


def test_chromatic_counts_colourings():
    rng = random.Random(4)
    for _ in range(20):
        G = _random_graph(rng, rng.randint(1, 5))
        chi = chromatic_poly(G)
        for k in range(4):
            assert chi(k) == _proper_colourings(G, k)


@pytest.mark.parametrize("p", range(1, 6))
def test_acyclic_orientation_routes_agree(p):
    for G in enumerate_graphs(p):
        a = acyclic_count(G)
        assert a == acyclic_count_bruteforce(G) == acyclic_count_sources(G)


@pytest.mark.parametrize("p", range(1, 7))
def test_tau_matches_partition_sum(p):
    for G in enumerate_graphs(p):
        assert tau_poly(G) == tau_via_partitions(G)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=1, max_size=7))
def test_rising_basis_reconstructs(coeffs):
    f = IntPoly(coeffs)
    b = rising_basis(f)
    out = IntPoly(())
    rise = IntPoly((1,))
    for i, c in enumerate(b):
        out = out + rise * c
        rise = rise * IntPoly((i, 1))
    assert out == f


def test_tau_scan_small():
    rs = tau_real_rooted_scan(5)
    assert len(rs) == 1 + 1 + 2 + 6 + 21
    assert all(r.status == "pass" for r in rs)
    with pytest.raises(SizeError):
        tau_real_rooted_scan(8)
    assert tau_poly(Graph.complete(3)).render("x") == "6x+6x^2+x^3"

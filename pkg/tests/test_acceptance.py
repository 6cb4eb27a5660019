"""End-to-end acceptance criteria; each test prints one PASS/FAIL line."""

import random
import time
from itertools import permutations
from math import factorial

import pytest

from coxlab.bruhat import poset_isomorphic, quotient_interval, rank_gf
from coxlab.cdindex import cd_nonneg_scan, distinct_orderings
from coxlab.cli import run
from coxlab.combstats.graphs import (
    acyclic_count, acyclic_count_bruteforce, enumerate_graphs, tau_poly, tau_real_rooted_scan, tau_via_partitions,
)
from coxlab.combstats.permutations import (
    eulerian_monotone_check, eulerian_tp_check, odd_length, odd_length_gf, verify_Ln,
)
from coxlab.coxeter import parse_subset
from coxlab.kl import ParabolicContext, context, q_poly, rtilde
from coxlab.polylab.hvectors import scan_kw, scan_scphtp
from coxlab.polylab.matrix import brute_force_tn, neville_tn, toeplitz_tp_check
from coxlab.polylab.sequences import is_log_concave, is_ultra_log_concave
from coxlab.report import Report
from coxlab.scans import cic_scan, kl_monotone_scan, parabolic_monotone_scan

from conftest import system
from corpora import random_tn_corpus, real_rooted_corpus

pytestmark = pytest.mark.acceptance


@pytest.fixture
def verdict(capsys):
    t0 = time.perf_counter()

    def emit(n, title, checks, limit_s=None):
        elapsed = time.perf_counter() - t0
        failures = [name for name, ok in checks if not ok]
        if limit_s is not None and elapsed > limit_s:
            failures.append(f"runtime {elapsed:.1f}s over {limit_s}s")
        status = "PASS" if not failures else "FAIL"
        line = f"criterion {n:2d} {status}: {title} ({elapsed:.1f}s)"
        if failures:
            line += " -- failed: " + "; ".join(failures)
        with capsys.disabled():
            print("\n" + line)
        assert not failures, line

    return emit


def test_01_b5_parabolic_kl(verdict):
    B = system("B5")
    J = parse_subset(B, "-s3")
    u1, v1 = B.parse_element("[4,1,5,2,3]"), B.parse_element("[5,-4,1,2,3]")
    u2, v2 = B.parse_element("[1,4,2,5,3]"), B.parse_element("[-4,1,5,2,3]")
    ctx = context(B, J, "q")
    p1, p2 = ctx.p(u1, v1), ctx.p(u2, v2)
    iso = poset_isomorphic(quotient_interval(u1, v1, J), quotient_interval(u2, v2, J))
    verdict(1, "B5 parabolic KL: P=q vs P=0 on isomorphic quotient intervals",
            [("P1 = q", p1.render() == "q"), ("P2 = 0", p2.is_zero()), ("posets isomorphic", iso)], 300)


def test_02_a5_rtilde(verdict):
    A = system("A5")
    u, v = A.parse_element("[2,1,3,4,6,5]"), A.parse_element("[5,6,3,4,1,2]")
    rt = rtilde(u, v)
    Q = list(q_poly(u, v).coeffs)  # coefficient of q^j at index j
    shifted = Q[1:]  # lowest nonzero coefficient at index 0
    verdict(2, "A5 R-tilde = t^2+4t^4+6t^6+5t^8+t^10, Q log-concave, not ultra log-concave", [
        ("R-tilde", rt.render("t") == "t^2+4t^4+6t^6+5t^8+t^10"),
        ("Q log-concave", is_log_concave(Q) and is_log_concave(shifted)),
        ("not ultra (degree index)", not is_ultra_log_concave(Q)),
        ("not ultra (shifted index)", not is_ultra_log_concave(shifted)),
    ], 60)


def test_03_h3_rank_witness(verdict):
    H = system("H3")
    u, v = H.parse_element("s3"), H.parse_element("s1.s2.s3.s2.s1.s2.s1.s3")
    r = rank_gf(u, v)
    verdict(3, "H3 rank generating function witness is not log-concave", [
        ("rank_gf", r.render("t") == "1+3t+5t^2+7t^3+10t^4+10t^5+5t^6+t^7"),
        ("fails log-concavity", not is_log_concave(r.coeffs)),
    ], 60)


def test_04_cic_small_rank(verdict):
    rs = cic_scan(["A3", "B3"], 4)
    verdict(4, "combinatorial invariance in A3, B3 for l(u,v) <= 4", [
        ("some classes", len(rs) > 0),
        ("no KL mismatches", not any(r.status == "fail" and not r.engine_suspect for r in rs)),
        ("Bruhat graphs isomorphic in every bucket", not any(r.engine_suspect for r in rs)),
        ("nothing skipped", all(r.status == "pass" for r in rs)),
    ], 600)


def test_05_odd_length(verdict):
    t0 = time.perf_counter()
    reps = [verify_Ln(n) for n in range(5, 10)]
    t9 = time.perf_counter() - t0
    values = all(odd_length_gf(n)(1) == factorial(n) for n in range(1, 10))
    ident = True
    for n in range(1, 8):
        top = odd_length(tuple(range(n, 0, -1)))
        ident &= all(odd_length(w[::-1]) == top - odd_length(w) for w in permutations(range(1, n + 1)))
    verdict(5, "odd length L_n symmetric and unimodal for 5 <= n <= 9, L_n(1) = n!, reversal identity n <= 7", [
        ("symmetric and unimodal", all(r.status == "pass" for r in reps)),
        ("L_n(1) = n!", values),
        ("identity", ident),
        ("n = 9 under 5 minutes", t9 < 300),
    ], 300)


def test_06_eulerian(verdict):
    tp = eulerian_tp_check(20)
    mono = eulerian_monotone_check(15, 15, 3)
    verdict(6, "Eulerian 20x20 total nonnegativity and solid-minor monotonicity", [
        ("20x20 TN", tp.status == "pass"), ("monotone in i", mono.status == "pass"),
    ], 600)


def test_07_cd_index(verdict):
    A = system("A3")
    rs = cd_nonneg_scan("A3", 5)
    verdict(7, "complete cd-index nonnegative on A3, l(u,v) <= 5, ordering independent, exact round trip", [
        ("at least 3 orderings", len(distinct_orderings(A)) >= 3),
        ("every interval checked", len(rs) > 0 and all(r.status != "skipped" for r in rs)),
        ("no failures", all(r.status == "pass" for r in rs)),
    ], 600)


def test_08_hypercube(verdict, tmp_path):
    codes, reps = [], []
    for argv in (["--groups", "A3"], ["--groups", "A4", "--sample", "100", "--seed", "0"]):
        out = tmp_path / "h.jsonl"
        codes.append(run(["hypercube", *argv, "--output", str(out)]))
        reps.append([Report.from_json(line) for line in out.read_text().splitlines()])
    s4, s5 = reps
    verdict(8, "first-letter sets are hypercube decompositions: all of S4, 100 sampled intervals of S5", [
        ("exit codes", codes == [0, 0]),
        ("S4 no failures", s4 and not any(r.status == "fail" for r in s4)),
        ("S5 sample of 100", len(s5) == 100 and not any(r.status == "fail" for r in s5)),
        ("skips are only v in X", all(r.witness.startswith("v lies in the first-letter set")
                                      for r in s4 + s5 if r.status == "skipped")),
    ], 600)


def test_09_tau(verdict):
    scan = tau_real_rooted_scan(6)
    same = all(tau_poly(G) == tau_via_partitions(G) for p in range(1, 7) for G in enumerate_graphs(p))
    acyc = all(acyclic_count(G) == acyclic_count_bruteforce(G) for p in range(1, 6) for G in enumerate_graphs(p))
    verdict(9, "tau real-rooted on connected graphs p <= 6; tau = partition sum p <= 6; a(G) p <= 5", [
        ("112 connected graphs on 6 vertices", sum(r.instance.startswith("p=6") for r in scan) == 112),
        ("real-rooted", all(r.status == "pass" for r in scan)),
        ("partition sum", same), ("acyclic orientations", acyc),
    ], 900)


def test_10_theorem_suites(verdict):
    A = system("A3")
    mono = kl_monotone_scan("A3")
    pmono = parabolic_monotone_scan("A3")
    rng = random.Random(1)
    descent_ok = True
    for J in ((), (0,), (1,), (0, 2), (1, 2)):
        for x in ("q", "-1"):
            ref = ParabolicContext(A, J, x)
            alts = [ParabolicContext(A, J, x, descent=max),
                    ParabolicContext(A, J, x, descent=lambda ds: rng.choice(sorted(ds)))]
            quot = [w for w in A.elements() if ref.in_quotient(w.index)]
            for u in quot:
                for v in quot:
                    descent_ok &= all(c.r(u, v) == ref.r(u, v) and c.p(u, v) == ref.p(u, v) for c in alts)
    corpus = [M for M in random_tn_corpus(20240521, 16000)]
    nev = [(neville_tn(M), M) for M in corpus]
    nev = [(v, M) for v, M in nev if v is not None]
    nev_ok = len(nev) >= 10_000 and all(v == brute_force_tn(M) for v, M in nev)
    edrei = all(toeplitz_tp_check(p, s) for p in real_rooted_corpus() for s in range(1, len(p) + 4))
    face = []
    for d in (1, 2, 3):
        face += scan_scphtp(d, 10)
        for k in range(1, d + 1):
            face += scan_kw(d, 10, k)
    verdict(10, "theorem property suites never fail", [
        ("KL monotonicity S4", all(r.status == "pass" for r in mono)),
        ("parabolic monotonicity S4, all J >= I", len(pmono) == 27 and all(r.status == "pass" for r in pmono)),
        ("descent-choice independence", descent_ok),
        ("Neville = all minors", nev_ok),
        ("Edrei one direction", edrei),
        ("g-theorem and KW scans d <= 3, hmax <= 10", face and all(r.status == "pass" for r in face)),
    ], 900)

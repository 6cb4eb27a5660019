"""Conjecture and theorem scans built on the KL engine.

Each scan is split into per-``v`` tasks (module-level functions of picklable
arguments) so that a ``mapper`` can farm them out; bucketing and isomorphism
tests run afterwards in the calling process, in a fixed order, so the report
stream does not depend on how the tasks were scheduled.
"""

from __future__ import annotations

from itertools import combinations

from . import bruhat
from .bruhat import bruhat_graph, digraph_isomorphic, interval, poset_invariant, poset_isomorphic
from .coxeter import build_system, format_subset
from .errors import DomainError, SizeError
from .intpoly import IntPoly
from .kl import context, q_poly
from .polylab.sequences import is_log_concave
from .report import failed, passed, skipped, stopwatch


def serial_map(fn, arglist):
    return [fn(*args) for args in arglist]


def fmt(w) -> str:
    return w.system.format_element(w) or "e"


def pair_text(u, v) -> str:
    return f"{u.system.name}:[{fmt(u)},{fmt(v)}]"


def _finite(name):
    sys = build_system(name)
    if not sys.finite:
        raise DomainError(f"{name} is infinite; scans need a finite system")
    return sys


def _elements_ids(name):
    sys = _finite(name)
    return [w.index for w in sys.elements()]


# -- combinatorial invariance ---------------------------------------------------------
def _cic_task(name, vi, max_len):
    sys = build_system(name)
    ctx = context(sys)
    v = sys.element(vi)
    out = []
    for ui in sorted(bruhat._lower_ideal(sys, vi)):
        u = sys.element(ui)
        if v.length - u.length > max_len:
            continue
        I = interval(u, v)
        out.append((name, ui, vi, ctx.p(u, v).coeffs, poset_invariant(I)))
    return out


def _classify(items, same, cap):
    """Split ``items`` (already bucketed by an invariant) into classes under ``same``.

    Returns ``(classes, too_big)``; each class is a list of items, the first
    being the representative.
    """
    classes, too_big = [], []
    for it in items:
        try:
            for cls in classes:
                if same(cls[0], it):
                    cls.append(it)
                    break
            else:
                classes.append([it])
        except SizeError as exc:
            too_big.append((it, str(exc)))
    return classes, too_big


def cic_scan(groups, max_len, mapper=serial_map, cap=bruhat.ISO_CAP):
    """Bucket intervals of length <= max_len by poset type; KL polynomials must agree."""
    tasks = [(g, vi, max_len) for g in groups for vi in _elements_ids(g)]
    rows = [r for chunk in mapper(_cic_task, tasks) for r in chunk]
    buckets = {}
    for row in rows:
        buckets.setdefault(row[4], []).append(row)

    def iv(row):
        sys = build_system(row[0])
        return interval(sys.element(row[1]), sys.element(row[2]))

    def same(a, b):
        return poset_isomorphic(iv(a), iv(b), cap)

    reports = []
    for key in sorted(buckets, key=lambda k: (k[0], k[1], repr(k[2]))):
        with stopwatch() as t:
            classes, too_big = _classify(buckets[key], same, cap)
        for it, why in too_big:
            I = iv(it)
            reports.append(skipped("cic", pair_text(I.u, I.v), why))
        for cls in classes:
            with stopwatch() as t:
                rep = iv(cls[0])
                polys = {}
                for it in cls:
                    polys.setdefault(IntPoly(it[3]), it)
                bad_graph = None
                G0 = bruhat_graph(rep.u, rep.v)
                for it in cls[1:]:
                    I = iv(it)
                    if not digraph_isomorphic(G0, bruhat_graph(I.u, I.v), cap):
                        bad_graph = I
                        break
            inst = f"class of {pair_text(rep.u, rep.v)} ({rep.size} elements, {len(cls)} intervals)"
            if bad_graph is not None:
                reports.append(failed("cic", inst,
                                      f"poset-isomorphic but Bruhat graphs differ: {pair_text(bad_graph.u, bad_graph.v)}",
                                      engine_suspect=True, elapsed_ms=t[0]))
            elif len(polys) > 1:
                wit = "; ".join(f"{pair_text(iv(it).u, iv(it).v)} P={p}" for p, it in polys.items())
                reports.append(failed("cic", inst, wit, elapsed_ms=t[0]))
            else:
                (p,) = polys
                reports.append(passed("cic", inst, f"P={p}", elapsed_ms=t[0]))
    return reports


# -- parabolic combinatorial invariance --------------------------------------------------
def _pcic_task(name, jmask, vi, max_size):
    sys = build_system(name)
    J = frozenset(s for s in range(sys.n) if jmask >> s & 1)
    ctx = context(sys, J, "q")
    if not ctx.in_quotient(vi):
        return []
    v = sys.element(vi)
    out = []
    for ui in sorted(bruhat._lower_ideal(sys, vi)):
        if not ctx.in_quotient(ui) or not sys._leq(ui, vi):
            continue
        u = sys.element(ui)
        Q = bruhat.quotient_interval(u, v, J)
        if Q.interval.size > max_size:
            out.append((name, jmask, ui, vi, None, None))
            continue
        out.append((name, jmask, ui, vi, ctx.p(u, v).coeffs, poset_invariant(Q.flagged_poset())))
    return out


def _mask(J):
    return sum(1 << s for s in J)


def parabolic_cic_scan(pairs, max_size=bruhat.ISO_CAP, mapper=serial_map):
    """``pairs``: iterable of (group name, J).  Intervals are compared together with their quotient flags."""
    tasks = []
    for g, J in pairs:
        for vi in _elements_ids(g):
            tasks.append((g, _mask(J), vi, max_size))
    rows = [r for chunk in mapper(_pcic_task, tasks) for r in chunk]

    def qi(row):
        sys = build_system(row[0])
        J = frozenset(s for s in range(sys.n) if row[1] >> s & 1)
        return bruhat.quotient_interval(sys.element(row[2]), sys.element(row[3]), J)

    def label(row):
        Q = qi(row)
        return f"{pair_text(Q.interval.u, Q.interval.v)} J={format_subset(Q.interval.system, Q.J)}"

    reports = []
    buckets = {}
    for row in rows:
        if row[4] is None:
            reports.append(skipped("parabolic-cic", label(row), f"interval larger than {max_size}"))
        else:
            buckets.setdefault(row[5], []).append(row)

    def same(a, b):
        return poset_isomorphic(qi(a).flagged_poset(), qi(b).flagged_poset(), max_size)

    for key in sorted(buckets, key=lambda k: (k[0], k[1], repr(k[2]))):
        classes, too_big = _classify(buckets[key], same, max_size)
        for it, why in too_big:
            reports.append(skipped("parabolic-cic", label(it), why))
        for cls in classes:
            polys = {}
            for it in cls:
                polys.setdefault(IntPoly(it[4]), it)
            inst = f"class of {label(cls[0])} ({len(cls)} intervals)"
            if len(polys) > 1:
                wit = "; ".join(f"{label(it)} P={p}" for p, it in polys.items())
                reports.append(failed("parabolic-cic", inst, wit))
            else:
                (p,) = polys
                reports.append(passed("parabolic-cic", inst, f"P={p}"))
    return reports


def quotient_preserving_isos(u, v, J1, w, z, J2, cap=bruhat.ISO_CAP):
    """Isomorphisms ``[u,v] -> [w,z]`` carrying ``[u,v]^J1`` onto ``[w,z]^J2``."""
    A = bruhat.quotient_interval(u, v, J1).flagged_poset()
    B = bruhat.quotient_interval(w, z, J2).flagged_poset()
    return list(bruhat.enumerate_poset_isos(A, B, cap))


# -- monotonicity ------------------------------------------------------------------------
def _monotone_task(name, wi):
    sys = build_system(name)
    ctx = context(sys)
    w = sys.element(wi)
    below = sorted(bruhat._lower_ideal(sys, wi))
    for vi in below:
        Pv = ctx._P(vi, wi)
        if not Pv.nonnegative():
            return f"P_{{{fmt(sys.element(vi))},{fmt(w)}}}={Pv} has a negative coefficient"
        for ui in below:
            if ui != vi and sys._leq(ui, vi):
                Pu = ctx._P(ui, wi)
                if not Pv.leq(Pu):
                    return (f"P_{{{fmt(sys.element(vi))},{fmt(w)}}}={Pv} not <= "
                            f"P_{{{fmt(sys.element(ui))},{fmt(w)}}}={Pu}")
    return None


def kl_monotone_scan(group, mapper=serial_map):
    """``u <= v <= w`` implies ``P_{v,w} <= P_{u,w}`` coefficientwise (a theorem)."""
    sys = _finite(group)
    ids = _elements_ids(group)
    results = mapper(_monotone_task, [(group, wi) for wi in ids])
    reports = []
    for wi, bad in zip(ids, results):
        inst = f"{group} w={fmt(sys.element(wi))}"
        if bad:
            reports.append(failed("kl-monotone", inst, bad, engine_suspect=True))
        else:
            reports.append(passed("kl-monotone", inst))
    return reports


def _pmono_task(name, jmask, imask):
    sys = build_system(name)
    J = frozenset(s for s in range(sys.n) if jmask >> s & 1)
    I = frozenset(s for s in range(sys.n) if imask >> s & 1)
    cj, ci = context(sys, J, "q"), context(sys, I, "q")
    quo = [w.index for w in sys.elements() if cj.in_quotient(w.index)]
    checked = 0
    for vi in quo:
        for ui in quo:
            if not sys._leq(ui, vi):
                continue
            pj, pi = cj._P(ui, vi), ci._P(ui, vi)
            checked += 1
            u, v = sys.element(ui), sys.element(vi)
            if not pj.nonnegative():
                return checked, f"P^J_{{{fmt(u)},{fmt(v)}}}={pj} has a negative coefficient"
            if not pj.leq(pi):
                return checked, f"P^J_{{{fmt(u)},{fmt(v)}}}={pj} not <= P^I={pi}"
    return checked, None


def parabolic_monotone_scan(group, pairs=None, mapper=serial_map):
    """``I <= J`` implies ``P^{J,q} <= P^{I,q}`` on ``W^J`` (a theorem).

    ``pairs`` defaults to every ``I <= J`` among the subsets of S.
    """
    sys = _finite(group)
    gens = range(sys.n)
    if pairs is None:
        subsets = [frozenset(c) for k in range(sys.n + 1) for c in combinations(gens, k)]
        pairs = [(J, I) for J in subsets for I in subsets if I <= J]
    pairs = [(frozenset(J), frozenset(I)) for J, I in pairs]
    for J, I in pairs:
        if not I <= J:
            raise DomainError("parabolic monotonicity needs I contained in J")
    results = mapper(_pmono_task, [(group, _mask(J), _mask(I)) for J, I in pairs])
    reports = []
    for (J, I), (n, bad) in zip(pairs, results):
        inst = f"{group} J={format_subset(sys, J)} I={format_subset(sys, I)}"
        if bad:
            reports.append(failed("parabolic-monotone", inst, bad, engine_suspect=True))
        else:
            reports.append(passed("parabolic-monotone", inst, f"{n} pairs"))
    return reports


# -- Bjorner's question ------------------------------------------------------------------
def _all_p_task(name, vi):
    sys = build_system(name)
    ctx = context(sys)
    return sorted({ctx._P(ui, vi).coeffs for ui in bruhat._lower_ideal(sys, vi)})


def pew_search(group, mapper=serial_map):
    """Which ``P_{u,v}`` of the group are not of the form ``P_{e,w}`` in the same group.

    The same-group version of the question is known to fail, so a nonempty
    answer is data; the report passes and lists what is missing.
    """
    sys = _finite(group)
    ids = _elements_ids(group)
    with stopwatch() as t:
        allp = set()
        for chunk in mapper(_all_p_task, [(group, vi) for vi in ids]):
            allp.update(chunk)
        ctx = context(sys)
        pe = {ctx._P(0, vi).coeffs for vi in ids}
    missing = sorted(allp - pe, key=lambda c: (len(c), c))
    polys = sorted(allp, key=lambda c: (len(c), c))
    wit = (f"{len(polys)} distinct P_{{u,v}}; {len(pe)} distinct P_{{e,w}}; missing: "
           + (", ".join(str(IntPoly(c)) for c in missing) if missing else "none"))
    return [passed("pew", group, wit, elapsed_ms=t[0])]


# -- log-concavity conjectures --------------------------------------------------------------
def _qlc_task(name, vi):
    sys = build_system(name)
    v = sys.element(vi)
    bad = []
    for ui in sorted(bruhat._lower_ideal(sys, vi)):
        u = sys.element(ui)
        Q = q_poly(u, v)
        if not is_log_concave(Q.coeffs):
            bad.append(f"{pair_text(u, v)} Q={Q.render('y')}")
    return bad


def q_logconcave_scan(group, mapper=serial_map):
    sys = _finite(group)
    ids = _elements_ids(group)
    reports = []
    for vi, bad in zip(ids, mapper(_qlc_task, [(group, vi) for vi in ids])):
        inst = f"{group} v={fmt(sys.element(vi))}"
        reports.append(failed("q-logconcave", inst, "; ".join(bad)) if bad else passed("q-logconcave", inst))
    return reports


def _rlc_task(name, vi):
    sys = build_system(name)
    v = sys.element(vi)
    bad = []
    for ui in sorted(bruhat._lower_ideal(sys, vi)):
        u = sys.element(ui)
        rv = interval(u, v).rank_vector()
        if not is_log_concave(rv):
            bad.append(f"{pair_text(u, v)} rank={IntPoly(rv).render('t')}")
    return bad


def rank_logconcave_scan(group, mapper=serial_map):
    sys = _finite(group)
    ids = _elements_ids(group)
    reports = []
    for vi, bad in zip(ids, mapper(_rlc_task, [(group, vi) for vi in ids])):
        inst = f"{group} v={fmt(sys.element(vi))}"
        reports.append(failed("rank-logconcave", inst, "; ".join(bad)) if bad else passed("rank-logconcave", inst))
    return reports


# -- Bruhat graph theorem only ------------------------------------------------------------
def bruhat_graph_iso_scan(groups, max_len, mapper=serial_map, cap=bruhat.ISO_CAP):
    """Poset-isomorphic intervals must have isomorphic Bruhat graphs."""
    out = []
    for r in cic_scan(groups, max_len, mapper, cap):
        if r.status == "fail" and not r.engine_suspect:
            r = passed("bruhat-graph-iso", r.instance, "graphs isomorphic")
        r.check = "bruhat-graph-iso"
        out.append(r)
    return out

"""``verify``: run named verification suites and stream JSON-lines reports.

Exit status: 0 when every record passes (or is skipped), 1 when any record
fails, 2 on usage or internal errors.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations

from . import bruhat, scans
from .cdindex import cd_nonneg_scan, longest_element
from .combstats import (
    Graph,
    eulerian_monotone_check,
    eulerian_tp_check,
    odd_length,
    tau_poly,
    tau_real_rooted_scan,
    tau_via_partitions,
    verify_Ln,
)
from .coxeter import build_system, format_subset, parse_subset
from .errors import CoxlabError
from .kl import PolyCache, context, q_from_rtilde, rtilde_from_r, set_default_cache
from .polylab.hvectors import scan_kw, scan_scphtp
from .report import any_failed, failed, passed, skipped, stopwatch

CHECKS = (
    "cic", "parabolic-cic", "kl-monotone", "parabolic-monotone", "pew", "q-logconcave",
    "rank-logconcave", "cd-nonneg", "hypercube", "bruhat-graph-iso", "refl-series", "oddlength",
    "eulerian-tp", "eulerian-monotone", "tau-scan", "tau-compute", "scphtp", "kw", "kl-compute",
    "r-compute",
)
CACHE_ENV = "COXLAB_CACHE_DIR"
CACHE_FILE = "polys.cache"


class UsageError(Exception):
    pass


# -- parallel plumbing ------------------------------------------------------------
def _star(args):
    fn, a = args
    return fn(*a)


def parallel_scan(fn, arglist, workers: int) -> list:
    """``[fn(*a) for a in arglist]``, spread over ``workers`` processes; order is preserved."""
    if workers < 1:
        raise UsageError("worker count must be at least 1")
    arglist = list(arglist)
    if workers == 1 or len(arglist) <= 1:
        return [fn(*a) for a in arglist]
    chunk = max(1, len(arglist) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_star, [(fn, a) for a in arglist], chunksize=chunk))


def make_mapper(workers: int):
    def mapper(fn, arglist):
        return parallel_scan(fn, arglist, workers)

    return mapper


# -- argument handling ------------------------------------------------------------
def _groups(args, default):
    text = args.groups or args.group or default
    return [g.strip() for g in text.split(",") if g.strip()]


def _positive(name, value):
    if value is not None and value < 1:
        raise UsageError(f"--{name} must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="verify", description=__doc__.splitlines()[0])
    p.add_argument("check", choices=CHECKS)
    p.add_argument("--groups", help="comma-separated group descriptors")
    p.add_argument("--group", help="single group descriptor (compute commands)")
    p.add_argument("--max-length", type=int)
    p.add_argument("--max-size", type=int, default=bruhat.ISO_CAP, help="interval size cap for isomorphism tests")
    p.add_argument("--J", dest="J", help="generator subset: '-', 's1,s3' or '-s3' for S minus s3")
    p.add_argument("--I", dest="I", help="smaller subset for parabolic-monotone")
    p.add_argument("--x", default="q", choices=("q", "-1"))
    p.add_argument("--u")
    p.add_argument("--v")
    p.add_argument("--form", default="r", choices=("r", "rtilde", "q"), help="r-compute output")
    p.add_argument("--n-min", type=int, default=5)
    p.add_argument("--n-max", type=int, default=9)
    p.add_argument("--size", type=int, default=20)
    p.add_argument("--imax", type=int, default=15)
    p.add_argument("--jmax", type=int, default=15)
    p.add_argument("--rmax", type=int, default=3)
    p.add_argument("--max-vertices", type=int, default=6)
    p.add_argument("--all-graphs", action="store_true", help="tau-scan: include disconnected graphs")
    p.add_argument("--graph", help="graph file: 'p' then 1-based edge lines 'i j'")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--hmax", type=int, default=10)
    p.add_argument("--k", type=int)
    p.add_argument("--sample", type=int, help="hypercube: random sample size instead of all intervals")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cache", help=f"polynomial cache file (default ${CACHE_ENV}/{CACHE_FILE} if set)")
    p.add_argument("--output", help="write reports here instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sorted", action="store_true", help="sort records and zero timings (byte-stable)")
    p.add_argument("--summary", action="store_true", help="print totals to stderr")
    return p


# -- individual checks -------------------------------------------------------------
def _all_subsets(S):
    return [frozenset(c) for k in range(S.n + 1) for c in combinations(range(S.n), k)]


def run_cic(a, mapper):
    return scans.cic_scan(_groups(a, "A3,B3"), a.max_length or 4, mapper, a.max_size)


def run_parabolic_cic(a, mapper):
    pairs = []
    for g in _groups(a, "A3"):
        S = build_system(g)
        Js = [parse_subset(S, a.J)] if a.J is not None else _all_subsets(S)
        pairs += [(g, J) for J in Js]
    return scans.parabolic_cic_scan(pairs, a.max_size, mapper)


def run_kl_monotone(a, mapper):
    return [r for g in _groups(a, "A3") for r in scans.kl_monotone_scan(g, mapper)]


def run_parabolic_monotone(a, mapper):
    out = []
    for g in _groups(a, "A3"):
        S = build_system(g)
        pairs = None
        if a.J is not None or a.I is not None:
            pairs = [(parse_subset(S, a.J), parse_subset(S, a.I))]
        out += scans.parabolic_monotone_scan(g, pairs, mapper)
    return out


def run_pew(a, mapper):
    return [r for g in _groups(a, "A3") for r in scans.pew_search(g, mapper)]


def run_q_logconcave(a, mapper):
    return [r for g in _groups(a, "A3") for r in scans.q_logconcave_scan(g, mapper)]


def run_rank_logconcave(a, mapper):
    return [r for g in _groups(a, "A3") for r in scans.rank_logconcave_scan(g, mapper)]


def run_cd_nonneg(a, mapper):
    return [r for g in _groups(a, "A3") for r in cd_nonneg_scan(g, a.max_length or 5, mapper)]


def run_bruhat_graph_iso(a, mapper):
    return scans.bruhat_graph_iso_scan(_groups(a, "A3,B3"), a.max_length or 4, mapper, a.max_size)


def _hypercube_task(name, ui, vi):
    S = build_system(name)
    u, v = S.element(ui), S.element(vi)
    inst = scans.pair_text(u, v)
    X = bruhat.first_letter_set(u, v)
    if v in X:
        return ("skipped", inst, "v lies in the first-letter set, so X is not a proper lower part")
    with stopwatch() as t:
        try:
            ok = bruhat.is_hypercube_decomposition(u, v, X)
        except CoxlabError as exc:
            return ("skipped", inst, str(exc))
    if ok:
        return ("pass", inst, f"|X|={len(X)}", t[0])
    return ("fail", inst, f"X of size {len(X)} is not a hypercube decomposition", t[0])


def run_hypercube(a, mapper):
    reports = []
    for g in _groups(a, "A3"):
        S = build_system(g)
        els = list(S.elements())
        pairs = [(u.index, v.index) for v in els for u in els if S._leq(u.index, v.index)]
        if a.sample is not None:
            rng = random.Random(a.seed)
            pairs = sorted(rng.sample(pairs, min(a.sample, len(pairs))))
        for row in mapper(_hypercube_task, [(g, ui, vi) for ui, vi in pairs]):
            status, inst, wit = row[:3]
            ms = row[3] if len(row) > 3 else 0.0
            if a.sample is not None:
                inst += f" (sample seed={a.seed})"
            if status == "pass":
                reports.append(passed("hypercube", inst, wit, elapsed_ms=ms))
            elif status == "skipped":
                reports.append(skipped("hypercube", inst, wit))
            else:
                reports.append(failed("hypercube", inst, wit, engine_suspect=True, elapsed_ms=ms))
    return reports


def run_refl_series(a, mapper):
    reports = []
    for g in _groups(a, "A3"):
        S = build_system(g)
        L = a.max_length
        if L is None and not S.finite:
            raise UsageError(f"{g} is infinite; pass --max-length")
        with stopwatch() as t:
            series = S.reflection_length_series(L)
        wit = series.render("x")
        bad = [k for k, c in enumerate(series.coeffs) if c and k % 2 == 0]
        inst = f"{g} L={'inf' if L is None else L}"
        if bad:
            reports.append(failed("refl-series", inst, f"even-length reflections: {wit}", engine_suspect=True))
        elif L is None and S.finite and series(1) != longest_element(S).length:
            reports.append(failed("refl-series", inst, f"|T| differs from l(w0): {wit}", engine_suspect=True))
        else:
            reports.append(passed("refl-series", inst, wit, elapsed_ms=t[0]))
    return reports


def run_oddlength(a, mapper):
    from itertools import permutations

    reports = [verify_Ln(n) for n in range(a.n_min, a.n_max + 1)]
    for n in range(1, min(a.n_max, 7) + 1):
        w0 = tuple(range(n, 0, -1))
        top = odd_length(w0)
        bad = next((w for w in permutations(range(1, n + 1)) if odd_length(w[::-1]) != top - odd_length(w)), None)
        inst = f"identity n={n}"
        if bad:
            reports.append(failed("oddlength", inst, f"L(sw0) != L(w0) - L(s) at {bad}", engine_suspect=True))
        else:
            reports.append(passed("oddlength", inst))
    return reports


def run_eulerian_tp(a, mapper):
    return [eulerian_tp_check(a.size)]


def run_eulerian_monotone(a, mapper):
    return [eulerian_monotone_check(a.imax, a.jmax, a.rmax)]


def run_tau_scan(a, mapper):
    return tau_real_rooted_scan(a.max_vertices, connected=not a.all_graphs)


def _read_graph(a) -> Graph:
    if not a.graph:
        raise UsageError("--graph FILE is required")
    with open(a.graph, encoding="utf-8") as fh:
        return Graph.parse(fh.read())


def run_tau_compute(a, mapper):
    G = _read_graph(a)
    tau = tau_poly(G)
    inst = str(G)
    print(tau.render("x"))
    if G.p <= 10 and tau != tau_via_partitions(G):
        return [failed("tau-compute", inst, f"partition sum disagrees with basis change {tau}", engine_suspect=True)]
    return [passed("tau-compute", inst, tau.render("x"))]


def run_scphtp(a, mapper):
    return scan_scphtp(a.d, a.hmax)


def run_kw(a, mapper):
    ks = [a.k] if a.k is not None else range(1, a.d + 1)
    return [r for k in ks for r in scan_kw(a.d, a.hmax, k)]


def _compute_args(a):
    if not a.group or a.u is None or a.v is None:
        raise UsageError("--group, --u and --v are required")
    S = build_system(a.group)
    J = parse_subset(S, a.J)
    return S, J, S.parse_element(a.u), S.parse_element(a.v)


def run_kl_compute(a, mapper):
    S, J, u, v = _compute_args(a)
    P = context(S, J, a.x).p(u, v)
    print(P.render("q"))
    return [passed("kl-compute", f"{scans.pair_text(u, v)} J={format_subset(S, J)} x={a.x}", P.render("q"))]


def run_r_compute(a, mapper):
    S, J, u, v = _compute_args(a)
    R = context(S, J, a.x).r(u, v)
    out = R.render("q")
    if a.form != "r":
        if J:
            raise UsageError("R-tilde and Q are defined for J = empty set")
        ell = v.length - u.length
        rt = rtilde_from_r(R, ell) if not R.is_zero() else R
        out = rt.render("t") if a.form == "rtilde" else q_from_rtilde(rt, ell).render("t")
    print(out)
    return [passed("r-compute", f"{scans.pair_text(u, v)} J={format_subset(S, J)} x={a.x}", out)]


RUNNERS = {
    "cic": run_cic, "parabolic-cic": run_parabolic_cic, "kl-monotone": run_kl_monotone,
    "parabolic-monotone": run_parabolic_monotone, "pew": run_pew, "q-logconcave": run_q_logconcave,
    "rank-logconcave": run_rank_logconcave, "cd-nonneg": run_cd_nonneg, "hypercube": run_hypercube,
    "bruhat-graph-iso": run_bruhat_graph_iso, "refl-series": run_refl_series, "oddlength": run_oddlength,
    "eulerian-tp": run_eulerian_tp, "eulerian-monotone": run_eulerian_monotone, "tau-scan": run_tau_scan,
    "tau-compute": run_tau_compute, "scphtp": run_scphtp, "kw": run_kw, "kl-compute": run_kl_compute,
    "r-compute": run_r_compute,
}
COMPUTE = {"kl-compute", "r-compute", "tau-compute"}


def _cache_path(a):
    if a.cache:
        return a.cache
    d = os.environ.get(CACHE_ENV)
    return os.path.join(d, CACHE_FILE) if d else None


def _summary(reports, stream):
    counts = {}
    for r in reports:
        counts.setdefault(r.check, {"pass": 0, "fail": 0, "skipped": 0})[r.status] += 1
    stream.write(f"{'check':<20}{'pass':>8}{'fail':>8}{'skipped':>9}\n")
    for check in sorted(counts):
        c = counts[check]
        stream.write(f"{check:<20}{c['pass']:>8}{c['fail']:>8}{c['skipped']:>9}\n")


def _glue_subset_args(argv):
    # "--J -s3" would otherwise be read as an unknown option
    out, i = [], 0
    while i < len(argv):
        if argv[i] in ("--J", "--I") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def run(argv=None) -> int:
    parser = build_parser()
    argv = _glue_subset_args(sys.argv[1:] if argv is None else list(argv))
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if a.workers < 1:
            raise UsageError("--workers must be at least 1")
        for name in ("max_length", "max_size", "size", "max_vertices", "hmax", "d"):
            _positive(name.replace("_", "-"), getattr(a, name))
        path = _cache_path(a)
        cache = PolyCache()
        if path and os.path.exists(path):
            cache.load(path)
        set_default_cache(cache if path else None)
        reports = RUNNERS[a.check](a, make_mapper(a.workers))
        if path:
            cache.store(path)
    except (UsageError, CoxlabError, ValueError, OSError) as exc:
        sys.stderr.write(f"verify: error: {exc}\n")
        return 2
    finally:
        set_default_cache(None)
    lines = [r.to_json(timing=not a.sorted) for r in reports]
    if a.sorted:
        lines.sort()
    if a.check in COMPUTE and not a.output:
        lines = []  # the result was printed; reports only go to files
    text = "".join(line + "\n" for line in lines)
    if a.output:
        with open(a.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if a.summary:
        sys.stderr.write(f"seed={a.seed} workers={a.workers}\n")
        _summary(reports, sys.stderr)
    return 1 if any_failed(reports) else 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

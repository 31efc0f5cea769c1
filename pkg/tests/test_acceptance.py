"""Acceptance criteria 1-7, one check each.

Every check prints a single ``criterion N: PASS|FAIL ...`` line; the lines
are repeated in the pytest terminal summary.  Run directly with
``python3 tests/test_acceptance.py`` for the table alone.
"""

import time
from collections import Counter

import pytest

from branchforge.cli import RunConfig, run
from branchforge.curve import (
    check_parametrization,
    compactify,
    curve_equations,
    infinity_chart,
    normalization_check,
)
from branchforge.deformation import deform
from branchforge.lattice import (
    build_truncated_module,
    count_points,
    enumerate_semimodules,
    enumerate_stable_submodules,
    evaluate,
    purity_signature,
)
from branchforge.oracles import gamma_lattice_count, naive_stable_count
from branchforge.semigroup import semigroup_from_generators
from branchforge.verify import CORPUS, intro_weights

RESULTS: dict[int, str] = {}


def report(n, ok, detail):
    line = "criterion %d: %s  %s" % (n, "PASS" if ok else "FAIL", detail)
    RESULTS[n] = line
    print(line)
    return ok


def sg(gens):
    return semigroup_from_generators(gens)


def criterion_1():
    t0 = time.perf_counter()
    want = {(2, 3): (1, 2), (3, 4): (3, 6), (4, 6, 13): (8, 16)}
    got = {g: (sg(g).delta, sg(g).conductor) for g in want}
    sym = all(sg(g).conductor == 2 * sg(g).delta for g in CORPUS)
    dt = time.perf_counter() - t0
    ok = got == want and sym and dt < 1
    return report(1, ok, "invariants %s, symmetry on corpus %s, %.3fs" % (got, sym, dt))


def criterion_2():
    bad = []
    slowest = 0.0
    for g in CORPUS:
        t0 = time.perf_counter()
        s = sg(g)
        fam = deform(s)
        dt = time.perf_counter() - t0
        slowest = max(slowest, dt)
        if fam.basis.dimension != 2 * s.delta or 0 in fam.basis.weights or dt >= 5:
            bad.append(g)
    for n, m in [(2, 3), (3, 4), (2, 5), (2, 7), (3, 5)]:
        t0 = time.perf_counter()
        fam = deform(sg((n, m)))
        dt = time.perf_counter() - t0
        slowest = max(slowest, dt)
        w = fam.basis.weights
        if (Counter(w) != Counter(intro_weights(n, m)) or len(w) != (m - 1) * (n - 1)
                or 0 in w or dt >= 5):
            bad.append((n, m))
    return report(2, not bad, "dim T1 = 2 delta and weight multisets; failures %s; slowest %.3fs"
                  % (bad or "none", slowest))


def criterion_3():
    t0 = time.perf_counter()
    bad = []
    for g in CORPUS:
        s = sg(g)
        eqs = curve_equations(s)
        model = compactify(eqs, s)
        chart = infinity_chart(model)
        if not (check_parametrization(eqs, s) and normalization_check(model)
                and chart.points_at_infinity == 1 and chart.smooth
                and chart.point == (1,) * len(g) + (0,)):
            bad.append(g)
    dt = time.perf_counter() - t0
    return report(3, not bad and dt < 1, "parametrization, normalization, one smooth point "
                  "at infinity; failures %s; %.3fs" % (bad or "none", dt))


def criterion_4():
    t0 = time.perf_counter()
    problems = []
    golden = {(2, 3): ([2, 3, 5], [3, 4, 6], [1, 1]),
              (2, 5): ([2, 3, 5], [7, 13, 31], [1, 1, 1])}
    for g, (qs, counts, poly) in golden.items():
        sig = purity_signature(sg(g), qs)
        if [sig.counts[q] for q in qs] != counts or sig.polynomial != poly or not sig.ok:
            problems.append(g)
    sig = purity_signature(sg((3, 4)), [2, 3, 5, 7])
    p = sig.polynomial
    if not (len(p) == 4 and p[-1] == 1 and all(c.denominator == 1 and c >= 0 for c in p)
            and evaluate(p, 1) == 5):
        problems.append((3, 4))
    if not (sig.flags["strata_are_powers"] and all(e is not None for e in sig.exponents.values())):
        problems.append("strata")
    dt = time.perf_counter() - t0
    return report(4, not problems and dt < 120, "counts/fits for {2,3},{2,5},{3,4} -> %s; "
                  "problems %s; %.2fs" % ([int(c) for c in p], problems or "none", dt))


def criterion_5():
    bad = []
    for g, qs in [((2, 3), (2, 3)), ((2, 5), (2,)), ((3, 4), (2,))]:
        for q in qs:
            bfs = len(enumerate_stable_submodules(build_truncated_module(sg(g), q)))
            if bfs != naive_stable_count(sg(g), q):
                bad.append((g, q))
    bfs = len(enumerate_stable_submodules(build_truncated_module(sg((2, 3)), 2)))
    lat = gamma_lattice_count(2, 3, 2, window=2)
    if bfs != lat:
        bad.append("lattice")
    return report(5, not bad, "BFS = naive filter on 4 cases, BFS = lattice oracle (%d = %d); "
                  "failures %s" % (bfs, lat, bad or "none"))


def criterion_6():
    want = {(2, 3): 2, (2, 5): 3, (3, 4): 5}
    got = {g: len(enumerate_semimodules(sg(g))) for g in want}
    fields = {(2, 3): [2, 3], (2, 5): [2, 3, 5], (3, 4): [2, 3, 5, 7]}
    at_one = {g: int(evaluate(purity_signature(sg(g), fields[g]).polynomial, 1)) for g in want}
    ok = got == want and at_one == want
    return report(6, ok, "semimodules %s, P(1) %s" % (got, at_one))


def criterion_7(threads=4):
    a = run(RunConfig("verify", threads=1))
    b = run(RunConfig("verify", threads=threads))
    same = a.to_json(timing=False) == b.to_json(timing=False)
    ok = same and a.exit_status == 0
    return report(7, ok, "verify JSON identical at 1 and %d threads: %s; exit %d"
                  % (threads, same, a.exit_status))


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7]


@pytest.mark.parametrize("check", CRITERIA, ids=lambda f: f.__name__)
def test_acceptance(check):
    assert check(), RESULTS.get(int(check.__name__.rsplit("_", 1)[1]))


if __name__ == "__main__":
    results = [check() for check in CRITERIA]
    raise SystemExit(0 if all(results) else 1)

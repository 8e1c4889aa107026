"""Acceptance criteria, one test each.

Each test records a PASS/FAIL line (printed in the pytest terminal summary)
before asserting, so a failing criterion still shows up in the list.
"""

import json
import math
import time

import pytest

from spectral_lab import families as F
from spectral_lab import harness as H
from spectral_lab.bounds import (
    PASS,
    bound_cgn,
    bound_main,
    maas_delta_regular,
    maas_solve_delta,
    verify_edge_addition,
)
from spectral_lab.graph import bfs_distances, degree_profile, distance_summary, is_connected
from spectral_lab.rng import SplitMix64
from spectral_lab.spectral import dense_spectrum_oracle, gap_identity_check, max_entry_check, principal_pair

SUITE_SEED = 20240611
ORACLE_SEED = 77
FRIEDMAN_SEED = 2024
EXPLORER_SEED = 3


def _check(record, name, ok, detail=""):
    record(name, bool(ok), detail)
    assert ok, f"{name}: {detail}"


def _random_irregular_specs(count, seed, max_n):
    rng = SplitMix64(seed)
    specs = []
    while len(specs) < count:
        n = 5 + rng.below(max_n - 4)
        extra = rng.below(n)
        spec = f"random_connected({n},{extra}):{rng.next_u64()}"
        if not degree_profile(F.build(spec)).is_regular:
            specs.append(spec)
    return specs


def _suite_specs():
    return (
        ["section4(2..40)", "path(5..200)", "star(5..200)", "cycle_plus_chord(5..200)"]
        + _random_irregular_specs(50, SUITE_SEED, 200)
    )


_DELETION_SPECS = [
    "cycle(6..60)", "petersen()", "complete(4..12)", "circulant(6..30,1,2)", "circulant(8..30,1,3)",
]


def _suite_report():
    rows = H.run_campaign(H.CampaignConfig(families=_suite_specs()))
    return rows, H.format_report(rows, H.REPORT_FIELDS)


def _deletion_report():
    rows = H.run_edge_experiments(H.CampaignConfig(families=_DELETION_SPECS), mode="delete")
    return rows, H.format_report(rows, H.EDGE_FIELDS)


def _friedman_report():
    summary = H.run_friedman_study(3, 100, 100, 0.2, FRIEDMAN_SEED)
    return summary, json.dumps(summary, indent=1)


def _explorer_report():
    state = H.run_explorer(11, 2, 200, EXPLORER_SEED)
    return state, json.dumps(H.explorer_summary(state, 11, 2, EXPLORER_SEED), indent=1)


@pytest.fixture(scope="module")
def suite():
    start = time.perf_counter()
    rows, text = _suite_report()
    return rows, text, time.perf_counter() - start


@pytest.fixture(scope="module")
def deletions():
    start = time.perf_counter()
    rows, text = _deletion_report()
    return rows, text, time.perf_counter() - start


@pytest.fixture(scope="module")
def friedman():
    return _friedman_report()


@pytest.fixture(scope="module")
def explorer():
    return _explorer_report()


def test_criterion_01_main_theorem_suite(suite, acceptance_record):
    rows, _, elapsed = suite
    bad = [r["family"] for r in rows if r["verdict_main"] != PASS]
    strict = all(r["gap_lo"] > r["bound_main"] for r in rows if r["verdict_main"] == PASS)
    ok = not bad and strict and elapsed < 60.0
    _check(acceptance_record, "1 main theorem suite", ok,
           f"{len(rows)} graphs, non-pass={bad[:5]}, {elapsed:.1f}s (limit 60s)")


def test_criterion_02_cgn_comparison(suite, acceptance_record):
    rows, _, _ = suite
    problems = []
    for r in rows:
        cgn = bound_cgn(r["n"], r["diameter"], r["delta"], r["m"])
        if not cgn < bound_main(r["n"], r["diameter"]):
            problems.append((r["family"], "arithmetic"))
        if not r["gap_lo"] > max(cgn, r["bound_main"]) or "cgn=pass" not in r["verdict_extra"]:
            problems.append((r["family"], "gap"))
    _check(acceptance_record, "2 CGN comparison", not problems, f"{len(rows)} graphs, problems={problems[:5]}")


def test_criterion_03_edge_deletion_sandwich(deletions, acceptance_record):
    rows, _, elapsed = deletions
    applicable = [r for r in rows if r["verdict"] != H.INAPPLICABLE]
    bad = [(r["family"], r["u"], r["v"], r["verdict"]) for r in applicable if r["verdict"] != PASS]
    sandwich = all(r["lower"] < r["observed_lo"] and r["observed_hi"] < r["upper"] for r in applicable)
    ok = applicable and not bad and sandwich and elapsed < 120.0
    _check(acceptance_record, "3 edge-deletion sandwich", ok,
           f"{len(applicable)} deletions, failures={bad[:5]}, {elapsed:.1f}s (limit 120s)")


def test_criterion_04_cycle_plus_chord_limit(acceptance_record):
    l200 = principal_pair(F.cycle_plus_chord(200))
    l100 = principal_pair(F.cycle_plus_chord(100))
    dist_limit = max(abs(l200.lambda1_lo - 2.3829), abs(l200.lambda1_hi - 2.3829))
    spread = max(l200.lambda1_hi, l100.lambda1_hi) - min(l200.lambda1_lo, l100.lambda1_lo)
    ok = dist_limit <= 5e-4 and spread < 1e-6
    _check(acceptance_record, "4 G_n limit", ok,
           f"lambda1(G_200)={l200.midpoint!r}, |.-2.3829|<={dist_limit:.2e}, |G200-G100|<={spread:.2e}")


def test_criterion_05_maas(acceptance_record):
    worst_identity = worst_closed = 0.0
    for beta in (1.01, 1.1, 2.0, 5.0, 10.0):
        for n in (4, 10, 100, 10000):
            x = 1 / math.sqrt(n)
            sol = maas_solve_delta(beta, x, x, n)
            worst_identity = max(worst_identity, abs((1 + sol.delta - beta) - sol.bound_regular_form))
            worst_closed = max(worst_closed, abs(sol.delta - maas_delta_regular(beta, n)))
    worked = maas_solve_delta(2.0, 1 / math.sqrt(10), 1 / math.sqrt(10), 10).delta
    ok = worst_identity <= 1e-12 and worst_closed <= 1e-11 and abs(worked - 1.3062257) <= 1e-7
    _check(acceptance_record, "5 Maas machinery", ok,
           f"identity {worst_identity:.1e}, bisection vs closed form {worst_closed:.1e}, delta(2,10)={worked!r}")


def test_criterion_06_edge_addition(acceptance_record):
    violations = []
    pet = F.petersen()
    pet_edges = list(pet.non_edges())
    for e in pet_edges:
        r = verify_edge_addition(pet, e)
        if not (0.225 < r.observed_lo and r.observed_hi < 0.4 and r.verdict == PASS):
            violations.append(("petersen", e))
    checked = len(pet_edges)
    for k in range(3, 9):
        h = F.complete_bipartite(k, k)
        for e in h.non_edges():
            r = verify_edge_addition(h, e)
            checked += 1
            if not (r.upper is not None and r.lower < r.observed_lo and r.observed_hi < r.upper):
                violations.append((f"K{k},{k}", e))
    ok = len(pet_edges) == 30 and not violations
    _check(acceptance_record, "6 edge-addition theorem", ok, f"{checked} additions, violations={violations[:5]}")


def test_criterion_07_spectral_core(acceptance_record):
    rng = SplitMix64(ORACLE_SEED)
    worst = 0.0
    for _ in range(200):
        n = 2 + rng.below(255)
        extra = rng.below(min(2 * n, n * (n - 1) // 2 - (n - 1)) + 1)
        g = F.random_connected(n, extra, rng.next_u64())
        est = principal_pair(g)
        worst = max(worst, abs(est.midpoint - float(dense_spectrum_oracle(g)[0])))
    identity_bad, entry_bad = [], []
    for spec in _suite_specs():
        for s in F.parse_family_specs(spec):
            g = F.build(s)
            est = principal_pair(g)
            chk = gap_identity_check(g, est)
            if not chk.max_abs_error <= 10 * est.residual_norm:
                identity_bad.append(str(s))
            if not (est.eigvec.min() > 0 and max_entry_check(g, est)):
                entry_bad.append(str(s))
    ok = worst <= 1e-8 and not identity_bad and not entry_bad
    _check(acceptance_record, "7 spectral core", ok,
           f"oracle vs iterative {worst:.1e} on 200 graphs, identity failures={identity_bad[:3]}, "
           f"positivity/max-entry failures={entry_bad[:3]}")


def test_criterion_08_section4_structure(acceptance_record):
    bad = []
    for k in range(2, 41):
        g = F.section4_family(k)
        prof = degree_profile(g)
        x = principal_pair(g).eigvec
        top = x.max()
        ok = (
            prof.max_degree == 3
            and [v for v, d in enumerate(prof.degrees) if d == 2] == [F.index(1)]
            and distance_summary(g).diameter == k
            and x[F.index(1)] == x.min()
            and abs(x[F.index(k + 1)] - top) <= 1e-9
            and abs(x[F.index(k + 2)] - top) <= 1e-9
        )
        if not ok:
            bad.append(k)
    g3 = F.section4_family(3)
    x3 = principal_pair(g3).eigvec
    dist = bfs_distances(g3, F.index(1))
    big = [F.label(v) for v in range(g3.n) if x3[v] >= 1 / math.sqrt(7)]
    near = [v for v in big if dist[F.index(v)] < 3]
    ok = not bad and bool(big) and bool(near)
    _check(acceptance_record, "8 section-4 family structure", ok,
           f"bad k={bad}, k=3 labels with entry >= 1/sqrt7: {big} (closer than D: {near})")


def test_criterion_09_friedman(friedman, acceptance_record):
    summary, _ = friedman
    fraction = summary["fraction"]
    ok = fraction is not None and fraction >= 0.9
    _check(acceptance_record, "9 Friedman study", ok,
           f"seed {FRIEDMAN_SEED}: {summary['below_threshold']}/{summary['connected']} connected samples "
           f"with lambda2 <= {summary['threshold']:.4f} (fraction {fraction})")


def test_criterion_10_explorer(explorer, acceptance_record):
    state, _ = explorer
    target = 110 * (2 - 2 * math.cos(math.pi / 12))
    is_path = sorted(degree_profile(state.best).degrees) == [1, 1] + [2] * 9 and is_connected(state.best)
    c_mid = 0.5 * (state.best_c[0] + state.best_c[1])
    others = [H.run_explorer(7, 3, 60, 1), H.run_explorer(10, 3, 60, 2), H.run_explorer(12, 4, 60, 5)]
    all_above = all(s.best_c[0] > 1 and s.current_c[0] > 1 for s in [state] + others)
    ok = is_path and abs(c_mid - target) <= 1e-6 and all_above
    _check(acceptance_record, "10 explorer sanity", ok,
           f"best is path: {is_path}, c={c_mid!r} vs {target!r}, every c_lo > 1: {all_above}")


def test_criterion_11_determinism(suite, deletions, friedman, explorer, acceptance_record):
    same = {
        "suite": _suite_report()[1] == suite[1],
        "deletions": _deletion_report()[1] == deletions[1],
        "friedman": _friedman_report()[1] == friedman[1],
        "explorer": _explorer_report()[1] == explorer[1],
    }
    _check(acceptance_record, "11 determinism", all(same.values()), f"byte-identical reruns: {same}")


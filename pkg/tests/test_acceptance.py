"""Acceptance criteria, one test per criterion.

Each test prints a single ``CRITERION k: PASS|FAIL ...`` line (visible with
or without ``-s``) before asserting.
"""
import json
import time
from itertools import combinations
from pathlib import Path

import pytest

from epireflect import finalg, fintop, harness, mutants, reflector, topalg
from epireflect.documents import FIXTURES, load_any, reflection_report

DATA = Path(__file__).parent / "data"


@pytest.fixture
def report(capsys):
    def emit(k, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {k}: {'PASS' if ok else 'FAIL'} {detail}")
        return ok
    return emit


def _run(props, max_points):
    rep = harness.run_suite("all", max_points, properties=props)
    bad = [f"{p.id}: {p.counterexample['detail']}" for p in rep.properties if not p.passed]
    cases = {p.id: p.cases for p in rep.properties}
    return rep, bad, cases


def test_criterion_1_enumerators(report):
    counts, t4 = [], None
    for n in range(5):
        t0 = time.perf_counter()
        a = len(fintop.enumerate_open_families(n))
        b = len(fintop.enumerate_preorders(n))
        dt = time.perf_counter() - t0
        if n == 4:
            t4 = dt
        counts.append((a, b))
    ok = all(a == b for a, b in counts) and t4 < 10
    report(1, ok, f"counts {[a for a, _ in counts]}, n=4 in {t4:.2f}s (limit 10s)")
    assert ok


def test_criterion_2_reflection_correctness(report):
    t0 = time.perf_counter()
    rep, bad, cases = _run(["reflection-universal"], 4)
    dt = time.perf_counter() - t0
    ok = not bad and dt < 300
    iters = rep.properties[0].stats.get("max_t2_iterations")
    report(2, ok, f"{cases['reflection-universal']} (space, axiom) pairs, {len(bad)} failures, "
                  f"max T2 iterations {iters}, {dt:.1f}s (limit 300s)")
    assert ok, bad


def test_criterion_3_engine_agreement(report):
    rep, bad, cases = _run(["engines-agree"], 4)
    report(3, not bad, f"{cases['engines-agree']} engine comparisons, {len(bad)} disagreements")
    assert not bad, bad


def test_criterion_4_fixture_regression(report):
    _, X1 = load_any(FIXTURES / "x1.json")
    expected = json.loads((DATA / "x1_expected.json").read_text())
    got = {name: reflection_report(reflector.reflect(X1, name)) for name in expected}
    problems = [name for name in expected if got[name] != expected[name]]
    for name in ("T1", "T2", "URYSOHN", "FH"):
        if got[name]["target"]["opens"] != [[], [0]]:
            problems.append(f"{name} not one point")
    if got["CREG"]["target"] != {"points": ["a", "b", "p"], "opens": [[], [0, 1, 2]]}:
        problems.append("CREG target not the indiscrete space on a, b, p")
    if reflector.preserves_subspace(X1, [0, 1], "T1"):
        problems.append("T1 preserves {a,b}")
    checked = 0
    for n in range(1, 4):
        for X in fintop.enumerate_topologies(n):
            for r in range(1, n + 1):
                for A in combinations(range(n), r):
                    checked += 1
                    if not reflector.preserves_subspace(X, A, "T0"):
                        problems.append(f"T0 fails on {X.open_sets()} {A}")
    ok = not problems
    report(4, ok, f"x1 reflections match frozen outputs; T1 drops {{a,b}}; "
                  f"T0 preserves all {checked} subspaces up to 3 points" if ok else str(problems))
    assert ok, problems


def test_criterion_5_coincidence(report):
    rep, bad, cases = _run(["coincidence-criterion", "t1-t35-point-separation"], 4)
    report(5, not bad, f"{cases['coincidence-criterion']} nested-pair checks and "
                       f"{cases['t1-t35-point-separation']} point-separation checks, "
                       f"{len(bad)} failures")
    assert not bad, bad


def test_criterion_6_universal_algebra(report):
    n_congs = len(finalg.all_congruences(finalg.cyclic_group(4)))
    rep, bad, cases = _run(["first-isomorphism", "quotient-is-homomorphic-image"], 4)
    ok = n_congs == 3 and not bad
    report(6, ok, f"Z4 has {n_congs} congruences; {cases['first-isomorphism']} homomorphisms "
                  f"reconstructed; {cases['quotient-is-homomorphic-image']} partitions checked; "
                  f"{len(bad)} failures")
    assert ok, bad


def test_criterion_7_maltsev(report):
    t0 = time.perf_counter()
    rep = harness.run_suite("maltsev", 4)
    bad = [f"{p.id}: {p.counterexample['detail']}" for p in rep.properties if not p.passed]
    _, T = load_any(FIXTURES / "z4-coset.json")
    G = topalg.t1_reflection_group(T)
    V = topalg.induced_reflection_structure(T, "T1")
    z2 = (topalg.same_topstructure(G, V) and G.space == fintop.discrete(2)
          and G.alg == finalg.cyclic_group(2))
    dt = time.perf_counter() - t0
    ok = not bad and z2 and dt < 600
    cases = {p.id: p.cases for p in rep.properties}
    report(7, ok, f"{cases['maltsev-quotient-open']} congruence quotients, "
                  f"{cases['maltsev-reflection-open']} reflection arrows, "
                  f"{cases['maltsev-products']} product comparisons; z4-coset gives discrete Z2: "
                  f"{z2}; {dt:.1f}s (limit 600s)")
    assert ok, bad


def test_criterion_8_negative_controls(report):
    caught = {}
    for name in sorted(mutants.KNOWN):
        mutants.disable_all()
        mutants.enable(name)
        try:
            rep = harness.run_suite("all", 3)
        finally:
            mutants.disable_all()
        failed = [p for p in rep.properties if not p.passed]
        replayable = bool(failed) and not harness.replay(failed[0].counterexample)[0]
        caught[name] = (len(failed), replayable)
    ok = all(n > 0 and r for n, r in caught.values())
    report(8, ok, ", ".join(f"{k}: {n} properties fail, replay reproduces={r}"
                            for k, (n, r) in caught.items()))
    assert ok

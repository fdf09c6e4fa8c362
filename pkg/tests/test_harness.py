import pytest

from epireflect import harness, mutants


def test_registry_covers_every_suite():
    suites = {p.suite for p in harness.REGISTRY.values()}
    assert suites == set(harness.SUITES)
    for p in harness.REGISTRY.values():
        assert p.anchor and "§" not in p.anchor


def test_reflection_suite_small():
    rep = harness.run_suite("reflection", 2)
    assert rep.passed
    enum = next(p for p in rep.properties if p.id == "enumerators-agree")
    assert enum.stats == {"topologies_n0": 1, "topologies_n1": 1, "topologies_n2": 4}


def test_jobs_do_not_change_results():
    a = harness.run_suite("subspace", 3, jobs=1).to_doc(timings=False)
    b = harness.run_suite("subspace", 3, jobs=2).to_doc(timings=False)
    assert a == b


@pytest.mark.parametrize("name", sorted(mutants.KNOWN))
def test_mutants_are_detected_and_replayable(name):
    mutants.enable(name)
    try:
        rep = harness.run_suite("all", 3)
    finally:
        mutants.disable_all()
    failed = [p for p in rep.properties if not p.passed]
    assert failed
    cex = failed[0].counterexample
    assert cex["mutants"] == [name]
    ok, *_ = harness.replay(cex)
    assert not ok
    # without the mutant the same instance passes
    ok, *_ = harness.run_check(cex["property"], cex["instance"])
    assert ok


def test_replay_unknown_property():
    from epireflect.errors import EpireflectError
    with pytest.raises(EpireflectError):
        harness.replay({"property": "nope", "instance": {}})

import pytest

from epireflect import axioms, fintop, mutants, reflector
from epireflect.errors import (EmptySubset, MethodUnsupported, NotNested, NotT0Contained,
                               ReflectionNotInClass)
from epireflect.fintop import CMap
from epireflect.reflector import Reflection, reflect

SPACES3 = [X for n in range(4) for X in fintop.enumerate_topologies(n)]


def test_reflect_examples(S, I2, X1):
    assert reflect(I2, "T0", "direct").target.n == 1
    assert reflect(X1, "T1", "partitions").target.n == 1
    R = reflect(X1, "CREG", "generated")
    assert R.target == fintop.indiscrete(3)
    assert R.arrow.table == (0, 1, 2)
    assert reflect(S, "T2", "direct").target.n == 1
    assert reflect(S, "T2", "partitions").target.n == 1


def test_x1_reflections(X1):
    for name in ("T1", "T2", "URYSOHN", "FH", "T35"):
        assert reflect(X1, name).target.n == 1
    for name in ("REG", "CREG"):
        assert reflect(X1, name).target == fintop.indiscrete(3)
    assert fintop.is_homeomorphism(reflect(X1, "T0").arrow)


def test_methods_agree_where_defined():
    for X in SPACES3:
        for name in ("T1", "T2", "URYSOHN", "FH"):
            base = reflect(X, name, "partitions")
            for m in ("generated", "auto"):
                other = reflect(X, name, m)
                assert reflector.commuting_homeomorphism(base.arrow, other.arrow) is not None


def test_unsupported_methods(X1):
    with pytest.raises(MethodUnsupported):
        reflect(X1, "REG", "partitions")
    with pytest.raises(MethodUnsupported):
        reflect(X1, "FH", "direct")
    with pytest.raises(MethodUnsupported):
        reflect(X1, "T1", "magic")


def test_smallest_closed_equivalence(S, D2):
    assert reflector.smallest_closed_equivalence(D2).pairs == {(0, 0), (1, 1)}
    assert len(reflector.smallest_closed_equivalence(S).pairs) == 4
    two = fintop.sum_space([S, S])
    assert reflector.smallest_closed_equivalence(two).partition().blocks == ((0, 1), (2, 3))


def test_one_closed_relation_step_suffices():
    for n in range(5):
        for X in fintop.enumerate_topologies(n):
            assert reflect(X, "T2", "direct").iterations <= 1


def test_universal_property_and_bound():
    for X in SPACES3:
        for name in axioms.BUILTINS:
            R = reflect(X, name)
            assert reflector.verify_universal_property(R, name)
            assert reflector.verify_universal_property(R, name, max_codomain=X.n + 2)


def test_wrong_reflection_is_rejected(S):
    fake = Reflection(S, S, CMap(S, S, (0, 1)), "direct", "T1")
    v = reflector.verify_universal_property(fake, "T1")
    assert not v and v.certificate["reason"] == "target not in class"


def test_compose_reflections(S, X1):
    assert reflector.compose_reflections_check(S, "T0", "T1")
    assert reflector.compose_reflections_check(X1, "T0", "T2")
    with pytest.raises(NotNested):
        reflector.compose_reflections_check(S, "T1", "T0")


def test_functor_map(S, D2):
    f = CMap(D2, S, (0, 1))
    g = reflector.functor_map(f, "T1")
    assert g.table == (0, 0)


def test_c_open_sets(S, I2, X1):
    assert reflector.c_open_sets(X1, "T1") == (0, 0b111)
    assert reflector.c_open_sets(S, "T0") == S.opens
    assert reflector.c_open_sets(I2, "T2") == (0, 0b11)
    assert reflector.is_c_open(S, [1], "T0")
    for X in SPACES3:
        assert reflector.le_subspace_check(X, "T0")
        assert reflector.le_subspace_check(X, "T1")


def test_product_preservation(S, I2, Z4coset):
    assert reflector.product_preservation([I2, I2], "T0").is_homeo
    pc = reflector.product_preservation([S, S], "T0")
    assert pc.is_homeo and pc.mu.table == (0, 1, 2, 3)
    G = Z4coset.space
    assert reflector.product_preservation([G, G], "T1").is_homeo


def test_subspace_examples(X1, Z4coset):
    assert not reflector.preserves_subspace(X1, [0, 1], "T1")
    c1, c2 = reflector.pr_subspace_criterion(X1, [0, 1], "T1")
    assert not c1
    assert reflector.preserves_subspace(Z4coset.space, [0, 2], "T1")
    with pytest.raises(EmptySubset):
        reflector.preserves_subspace(X1, [], "T1")


def test_t0_preserves_all_subspaces():
    from itertools import combinations
    for X in SPACES3:
        for r in range(1, X.n + 1):
            for A in combinations(range(X.n), r):
                assert reflector.preserves_subspace(X, A, "T0")


def test_t1_closed(X1, D2, Z4coset):
    assert not reflector.is_t1_closed(X1, [2])
    assert reflector.is_t1_closed(D2, [0])
    assert reflector.is_t1_closed(Z4coset.space, [0, 2])


def test_a_embedded(X1, S):
    assert reflector.is_a_embedded(X1, [0, 1], [S])
    # maps from {a,b} into D2 separate a and b, but X1 is connected
    assert not reflector.is_a_embedded(X1, [0, 1], [fintop.discrete(2)])


def test_coincidence(D2, X1, S):
    assert reflector.coincide(D2, "T1", "T35") and reflector.coincide_criterion(D2, "T1", "T35")
    assert reflector.coincide(X1, "T1", "T35")
    assert reflector.coincide(S, "T0", "T0")
    assert not reflector.coincide(S, "T0", "T1")
    assert reflector.echi_lazaar(D2) and reflector.echi_lazaar(X1)
    assert reflector.echi_lazaar(S) == reflector.coincide(S, "T1", "T35")
    with pytest.raises(NotT0Contained):
        reflector.coincide(S, "REG", "CREG")
    with pytest.raises(NotNested):
        reflector.coincide(S, "T35", "T1")


def test_mutant_t1_engine_is_caught(X1):
    mutants.enable("t1-skip-closure")
    try:
        with pytest.raises(ReflectionNotInClass):
            reflect(X1, "T1", "direct")
    finally:
        mutants.disable_all()
    assert reflect(X1, "T1", "direct").target.n == 1

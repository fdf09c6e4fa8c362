"""Randomised checks on spaces beyond the exhaustive range."""
from hypothesis import given, settings, strategies as st

from epireflect import axioms, fintop, reflector
from epireflect.fintop import FinSpace
from epireflect.partition import Partition


@st.composite
def spaces(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    rel = [[i == j or draw(st.booleans()) for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                rel[i][j] = rel[i][j] or (rel[i][k] and rel[k][j])
    return FinSpace.from_preorder(rel)


@settings(max_examples=60, deadline=None)
@given(spaces())
def test_reflections_are_in_class_and_idempotent(X):
    for name in ("T0", "T1", "T2"):
        R = reflector.reflect(X, name)
        assert axioms.get(name)(R.target)
        assert R.arrow.is_quotient()
        assert fintop.is_homeomorphism(reflector.reflect(R.target, name).arrow)


@settings(max_examples=60, deadline=None)
@given(spaces())
def test_t1_reflection_is_component_quotient(X):
    assert reflector.reflect(X, "T1").kernel == X.components


@settings(max_examples=40, deadline=None)
@given(spaces(5), st.data())
def test_homeomorphism_symmetric(X, data):
    perm = data.draw(st.permutations(range(X.n)))
    Y = X.relabel(perm)
    f = fintop.is_homeomorphic(X, Y)
    g = fintop.is_homeomorphic(Y, X)
    assert f is not None and g is not None
    assert fintop.is_homeomorphism(fintop.CMap(X, Y, f))


@settings(max_examples=40, deadline=None)
@given(spaces(6), st.data())
def test_quotient_is_quotient_map(X, data):
    labels = data.draw(st.lists(st.integers(0, 3), min_size=X.n, max_size=X.n))
    Q, proj = fintop.quotient(X, Partition(labels))
    assert proj.is_quotient()


@settings(max_examples=30, deadline=None)
@given(spaces(3), spaces(3))
def test_product_projections_open(X, Y):
    P, projs = fintop.product([X, Y])
    for p in projs:
        if P.n:
            assert p.is_continuous() and p.is_open()

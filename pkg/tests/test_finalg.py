from itertools import product

import numpy as np
import pytest

from epireflect import finalg
from epireflect.errors import (DocumentError, NotACongruence, NotAHomomorphism,
                               SignatureMismatch, SizeLimit)
from epireflect.finalg import (Signature, Structure, all_congruences, congruence_generated,
                               cyclic_group, first_isomorphism, group_signature, parse_term,
                               quotient_structure)
from epireflect.partition import Partition, all_partitions

Z4 = cyclic_group(4)
Z2 = cyclic_group(2)


def brute_congruences(U):
    """Partitions compatible with every table, checked cell by cell."""
    out = []
    for P in all_partitions(U.n):
        ok = True
        for op, k in U.sig.ops:
            t = U.tables[op]
            for xs in product(range(U.n), repeat=k):
                for ys in product(range(U.n), repeat=k):
                    if all(P.related(a, b) for a, b in zip(xs, ys)) and not P.related(t[xs], t[ys]):
                        ok = False
        if ok:
            out.append(P)
    return out


def test_parse_terms():
    sig = group_signature()
    assert str(parse_term("mul(x, inv(e))", sig)) == "mul(x,inv(e))"
    for bad in ("mul(x)", "foo(x)", "mul(x,y", "xy", "1"):
        with pytest.raises(DocumentError):
            parse_term(bad, sig)


def test_signature_validation():
    with pytest.raises(DocumentError):
        Signature(("e",), (("e", 2),))
    with pytest.raises(DocumentError):
        Signature((), (("f", 0),))
    with pytest.raises(DocumentError):
        Signature((), (("f", 1),), ("f(x)",))


def test_group_equations_and_failure_witness():
    assert finalg.satisfies(Z4)
    bad = np.array(Z2.tables["mul"])
    with pytest.raises(DocumentError):
        Structure(group_signature(), 2, {"e": 0}, {"mul": bad, "inv": [0, 0]})
    U = Structure(group_signature(), 2, {"e": 0}, {"mul": bad, "inv": [0, 0]}, check=False)
    assert finalg.check_equations(U) == ("mul(x,inv(x))=e", {"x": 1})


def test_z4_congruences():
    congs = all_congruences(Z4)
    assert len(congs) == 3
    assert set(congs) == set(brute_congruences(Z4))
    assert congruence_generated(Z4, [(0, 2)]).blocks == ((0, 2), (1, 3))
    assert congruence_generated(Z4, []).is_identity


def test_congruence_scans_match_brute_force():
    for n in range(1, 5):
        for G in finalg.labeled_groups(n):
            assert set(all_congruences(G)) == set(brute_congruences(G))


def test_quotients():
    V, proj = quotient_structure(Z4, [[0, 2], [1, 3]])
    assert V == Z2 and proj == (0, 1, 0, 1)
    assert quotient_structure(Z4, Partition.identity(4))[0] == Z4
    assert quotient_structure(Z4, Partition.total(4))[0].n == 1
    with pytest.raises(NotACongruence):
        quotient_structure(Z4, [[0, 1], [2, 3]])


def test_first_isomorphism():
    K, ft = first_isomorphism((0, 1, 0, 1), Z4, Z2)
    assert K.blocks == ((0, 2), (1, 3)) and ft == (0, 1)
    assert first_isomorphism((0, 1), Z2, Z2)[0].is_identity
    K, _ = first_isomorphism((0, 0), Z2, finalg.trivial_group())
    assert K.num_blocks == 1
    with pytest.raises(NotAHomomorphism):
        first_isomorphism((0, 1, 1, 1), Z4, Z2)


def test_homomorphism_signature_mismatch():
    M = Structure(finalg.maltsev_signature(), 2, {}, {"phi": np.zeros((2, 2, 2), int)}, check=False)
    with pytest.raises(SignatureMismatch):
        finalg.is_homomorphism((0, 1), Z2, M)


def test_homomorphisms_z4_to_z2():
    assert sorted(finalg.homomorphisms(Z4, Z2)) == [(0, 0, 0, 0), (0, 1, 0, 1)]


def test_group_catalogue():
    assert [len(finalg.labeled_groups(n)) for n in range(1, 5)] == [1, 2, 3, 16]
    assert [G.n for G in finalg.groups_upto_iso(6)] == [1, 2, 3, 4, 4, 5, 6, 6]


def test_carrier_guard():
    with pytest.raises(SizeLimit):
        all_congruences(cyclic_group(9))


def test_relabel_is_isomorphism():
    perm = (2, 0, 3, 1)
    H = Z4.relabel(perm)
    assert finalg.satisfies(H)
    assert finalg.is_homomorphism(perm, Z4, H)

import json

import pytest

from epireflect import fintop
from epireflect.documents import (FIXTURES, algebra_from_doc, algebra_to_doc, load_any,
                                  map_from_doc, map_to_doc, maltsev_from_doc, maltsev_to_doc,
                                  reflection_report, space_from_doc, space_to_doc,
                                  topstructure_from_doc, topstructure_to_doc)
from epireflect.errors import DocumentError, NotATopology
from epireflect.finalg import cyclic_group
from epireflect.reflector import reflect


def test_fixtures_load():
    kinds = {p.name: load_any(p)[0] for p in FIXTURES.glob("*.json")}
    assert kinds == {"sierpinski.json": "space", "i2.json": "space", "d2.json": "space",
                     "x1.json": "space", "x2.json": "space", "z4-coset.json": "structure",
                     "z2-indiscrete.json": "structure"}


def test_space_round_trip(X1):
    doc = space_to_doc(X1)
    assert doc == {"points": ["a", "b", "p"], "opens": [[], [0], [1], [0, 1], [0, 1, 2]]}
    again = space_from_doc(json.loads(json.dumps(doc)))
    assert again == X1 and space_to_doc(again) == doc


def test_map_round_trip(S):
    f = fintop.CMap(S, fintop.discrete(2), (1, 1))
    doc = map_to_doc(f)
    assert map_to_doc(map_from_doc(doc)) == doc


def test_algebra_and_structure_round_trip(Z4coset):
    doc = topstructure_to_doc(Z4coset)
    T = topstructure_from_doc(doc)
    assert T.alg == Z4coset.alg and T.space == Z4coset.space
    assert topstructure_to_doc(T) == doc
    adoc = algebra_to_doc(cyclic_group(3))
    assert algebra_to_doc(algebra_from_doc(adoc)) == adoc


def test_maltsev_round_trip():
    import numpy as np
    X = fintop.discrete(2)
    phi = np.fromfunction(lambda x, y, z: (x + y + z) % 2, (2, 2, 2), dtype=int)
    doc = maltsev_to_doc(X, phi)
    Y, psi = maltsev_from_doc(doc)
    assert Y == X and (psi == phi).all() and maltsev_to_doc(Y, psi) == doc


def test_reflection_report(X1):
    rep = reflection_report(reflect(X1, "T1"))
    assert rep["target"] == {"points": ["a+b+p"], "opens": [[], [0]]}
    assert rep["arrow"] == [0, 0, 0] and rep["quotient"] and rep["open"]


def test_path_references(tmp_path):
    (tmp_path / "s.json").write_text(json.dumps({"points": ["x", "y"], "opens": [[], [1], [0, 1]]}))
    (tmp_path / "m.json").write_text(json.dumps({"dom": "s.json", "cod": "s.json", "table": [0, 1]}))
    kind, f = load_any(tmp_path / "m.json")
    assert kind == "map" and f.is_continuous()


@pytest.mark.parametrize("doc, err", [
    ({"points": ["a"]}, DocumentError),
    ({"points": ["a", "a"], "opens": [[], [0]]}, DocumentError),
    ({"points": ["a", "b"], "opens": [[], ["x"], [0, 1]]}, DocumentError),
    ({"points": ["a", "b", "c"], "opens": [[], [0], [1], [0, 1, 2]]}, NotATopology),
])
def test_bad_space_documents(doc, err):
    with pytest.raises(err):
        space_from_doc(doc)


def test_bad_map_and_algebra(S):
    with pytest.raises(DocumentError):
        map_from_doc({"dom": space_to_doc(S), "cod": space_to_doc(S), "table": [0, 2]})
    doc = algebra_to_doc(cyclic_group(2))
    del doc["tables"]["inv"]
    with pytest.raises(DocumentError):
        algebra_from_doc(doc)


def test_missing_file():
    with pytest.raises(DocumentError):
        load_any("/nonexistent/space.json")

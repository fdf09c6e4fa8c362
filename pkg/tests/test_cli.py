import json

from epireflect.cli import main
from epireflect.documents import FIXTURES

X1 = str(FIXTURES / "x1.json")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_reflect_t1_x1(capsys):
    code, out, _ = run(capsys, "reflect", "--axiom", "t1", X1, "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["target"] == {"points": ["a+b+p"], "opens": [[], [0]]}
    assert set(rep) == {"axiom", "method", "target", "arrow", "quotient", "open"}


def test_reflect_methods(capsys):
    for m in ("partitions", "closed-rel", "generated", "auto"):
        code, out, _ = run(capsys, "reflect", "--axiom", "fh", "--method", m, X1, "--json")
        assert code == 0 and json.loads(out)["target"]["opens"] == [[], [0]]


def test_coincide(capsys):
    code, out, _ = run(capsys, "coincide", "--fine", "t1", "--coarse", "t35", X1)
    assert code == 0 and "true" in out
    code, _, _ = run(capsys, "coincide", "--fine", "t0", "--coarse", "t1", X1)
    assert code == 1


def test_bad_space_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"points": ["a", "b", "c"], "opens": [[], [0], [1], [0, 1, 2]]}))
    code, _, err = run(capsys, "check", "axioms", str(bad))
    assert code == 2 and "NotATopology" in err
    code, _, err = run(capsys, "check", "axioms", str(tmp_path / "missing.json"))
    assert code == 2


def test_size_limit_exit_3(capsys):
    code, _, err = run(capsys, "verify", "--suite", "reflection", "--max-points", "6")
    assert code == 3
    code, _, _ = run(capsys, "reflect", "--axiom", "creg", X1, "--max-points", "2")
    assert code == 3


def test_check_axioms_and_map(capsys, tmp_path):
    code, out, _ = run(capsys, "check", "axioms", X1, "--json")
    assert code == 0 and json.loads(out)["T0"] and not json.loads(out)["T1"]
    assert run(capsys, "check", "axioms", X1, "--axiom", "t1")[0] == 1
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"dom": "sierpinski.json", "cod": "sierpinski.json", "table": [1, 0]}))
    assert run(capsys, "check", "map", str(m))[0] == 1


def test_subspace_and_copen(capsys):
    code, out, _ = run(capsys, "subspace", "--axiom", "t1", "--subset", "0,1", X1, "--json")
    assert code == 1 and json.loads(out)["separation_transfers"] is False
    code, _, _ = run(capsys, "subspace", "--axiom", "t0", "--subset", "0,1", X1,
                     "--family", str(FIXTURES / "sierpinski.json"))
    assert code == 0
    code, out, _ = run(capsys, "copen", "--axiom", "t1", X1, "--json")
    assert code == 0 and json.loads(out)["c_opens"] == [[], [0, 1, 2]]
    assert run(capsys, "subspace", "--axiom", "t1", "--subset", "0,9", X1)[0] == 2


def test_product_alg_topalg(capsys):
    z4 = str(FIXTURES / "z4-coset.json")
    assert run(capsys, "product", "--axiom", "t1", X1, X1)[0] == 0
    code, out, _ = run(capsys, "alg", z4, "--json")
    assert code == 0 and len(json.loads(out)["congruences"]) == 3
    code, out, _ = run(capsys, "topalg", z4, "--axiom", "t1", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["agrees"] and doc["closed_subgroup"] == [0, 2]
    assert doc["induced"]["space"]["opens"] == [[], [0], [1], [0, 1]]


def test_topalg_maltsev_document(capsys, tmp_path):
    p = tmp_path / "m.json"
    phi = [[[(x + y + z) % 2 for z in range(2)] for y in range(2)] for x in range(2)]
    p.write_text(json.dumps({"space": "d2.json", "phi": phi}))
    code, out, _ = run(capsys, "topalg", str(p), "--axiom", "t1")
    assert code == 0 and "topological" in out
    p.write_text(json.dumps({"space": "d2.json", "phi": [[[x] * 2] * 2 for x in range(2)]}))
    assert run(capsys, "topalg", str(p))[0] == 1


def test_verify_and_replay(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--suite", "coincidence", "--max-points", "3", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["passed"]
    assert all(p["instances"] > 0 for p in rep["properties"])
    code, out, _ = run(capsys, "verify", "--suite", "reflection", "--max-points", "2",
                       "--mutate", "t1-skip-closure", "--save-failures", str(tmp_path))
    assert code == 1 and "FAIL" in out
    saved = sorted(tmp_path.glob("*.json"))
    assert saved
    code, out, _ = run(capsys, "replay", str(saved[0]))
    assert code == 1 and "FAIL" in out


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--target", "separate-not-joint", "--max-points", "2")
    assert code == 0 and "none up to 2" in out
    code, out, _ = run(capsys, "search", "--target", "subspace-failure", "--max-points", "3",
                       "--axiom", "t1", "--json")
    found = json.loads(out)["findings"]
    x1 = {"points": ["0", "1", "2"], "opens": [[], [0], [1], [0, 1], [0, 1, 2]]}
    assert {"target": "subspace-failure", "space": x1, "subset": [0, 1], "axiom": "T1"} in found


def test_emitted_documents_reparse(capsys):
    from epireflect.documents import space_from_doc, space_to_doc
    _, out, _ = run(capsys, "reflect", "--axiom", "creg", X1, "--json")
    target = json.loads(out)["target"]
    assert space_to_doc(space_from_doc(target)) == target

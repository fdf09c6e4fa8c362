from epireflect import search


def test_separate_not_joint_finds_nothing():
    findings, summary = search.run("separate-not-joint", 3)
    assert findings == [] and summary["tables"] > 0


def test_t1_products_preserved_up_to_three():
    findings, summary = search.run("t1-product-failure", 3)
    assert findings == [] and summary["pairs"] == 105


def test_subspace_failure_rediscovers_x1_and_x2():
    findings, _ = search.run("subspace-failure", 3, ["T1"])
    shapes = {(tuple(map(tuple, f["space"]["opens"])), tuple(f["subset"])) for f in findings}
    assert (((), (0,), (1,), (0, 1), (0, 1, 2)), (0, 1)) in shapes
    assert (((), (2,), (0, 2), (1, 2), (0, 1, 2)), (0, 1)) in shapes
    assert search.run("subspace-failure", 3, ["T0"])[0] == []

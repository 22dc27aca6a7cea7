import itertools

import pytest

import boolearn


def test_generate_and_learn_comparator():
    train, valid, test = boolearn.generate("comparator:k=6", seed=3, samples=400)
    assert train.startswith(".i 12\n")
    circuit, report = boolearn.learn(train, valid, test, models="dt,sym", seed=2)
    assert report["and_nodes"] == circuit.and_nodes <= 5000
    assert report["test_acc"] > 0.8
    assert circuit.accuracy(test) == pytest.approx(report["test_acc"])


def test_symmetric_aig_truth_table():
    g = boolearn.symmetric_aig("0110", 3)
    for bits in itertools.product([False, True], repeat=3):
        assert g.evaluate(list(bits)) == (sum(bits) in (1, 2))


def test_aag_round_trip():
    text = "aag 3 2 0 1 1\n2\n4\n6\n6 2 4\n"
    g = boolearn.read_aag(text)
    assert g.to_aag() == text
    assert g.evaluate([True, True]) and not g.evaluate([True, False])


def test_detect_symmetric_on_parity():
    rows = ["".join(bits) for bits in itertools.product("01", repeat=4)]
    pla = ".i 4\n.o 1\n" + "".join(f"{r} {r.count('1') % 2}\n" for r in rows) + ".e\n"
    assert boolearn.detect_symmetric(pla) == "01010"
    assert boolearn.detect_symmetric(".i 2\n.o 1\n00 0\n01 1\n10 0\n.e\n") is None


def test_score_means():
    reports = [
        {"valid_acc": 0.9, "test_acc": 0.8, "and_nodes": 100, "levels": 4},
        {"valid_acc": 0.9, "test_acc": 0.9, "and_nodes": 300, "levels": 8},
    ]
    s = boolearn.score(reports)
    assert s["mean_test_acc"] == pytest.approx(0.85)
    assert s["mean_overfit"] == pytest.approx(0.05)
    assert [p["nodes"] for p in s["pareto_points"]] == [100, 300]


def test_errors_are_value_errors():
    with pytest.raises(ValueError):
        boolearn.read_aag("not an aiger file")
    with pytest.raises(ValueError):
        boolearn.generate("divider:k=4")

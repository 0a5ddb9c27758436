import pathlib

import pytest

import svtan

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"


def test_classify_cm3_g2():
    r = svtan.classify([1, 2], [1, 1])
    assert r["facets"] == ["F_{1,1}", "F_1"]
    assert r["verdicts"]["normal"]["verdict"] == "no"
    assert r["verdicts"]["normal"]["witness"] == [0, 1]
    assert r["verdicts"]["cohen_macaulay"]["verdict"] == "yes"
    assert r["verdicts"]["gorenstein"]["verdict"] == "yes"
    assert r["evidence"]["x0"] == [0, -1]
    assert r["expected"]["clause"] == "CM3+G2"
    assert r["agreement"] is True


def test_normalization_is_reported():
    r = svtan.classify([2, 1], [1, 1])
    assert r["params"]["a"] == [1, 2]
    assert r["params"]["original"]["a"] == [2, 1]


def test_not_cohen_macaulay_witness():
    r = svtan.classify([2, 2], [1, 2])
    assert r["verdicts"]["cohen_macaulay"]["verdict"] == "no"
    assert r["evidence"]["s_prime_witness"] == [1, 0, 0]


def test_full_evidence_records():
    r = svtan.classify([1, 2], [1, 2], full_evidence=True)
    assert len(r["evidence"]["j_records"]) == 14
    empty = [j["J"] for j in r["evidence"]["j_records"] if j["G_J"] == "empty"]
    assert ["F_{1,1}", "F_1"] in empty
    assert ["F_{2,1}", "F_{2,2}"] in empty
    assert r["evidence"]["supremum"] == [0, -1, -1]


def test_semigroup_and_group_membership():
    assert not svtan.semigroup_member([3], [1], [1])
    assert svtan.semigroup_member([3], [1], [2])
    assert svtan.group_member([2], [2], [1, 1])
    assert not svtan.group_member([2], [2], [1, 0])
    assert [1, 1] in svtan.generators([2, 2], [1, 1])


def test_sweep_small_grid_agrees():
    s = svtan.sweep(2, 2, 2, threads=1)
    assert s["summary"]["instances"] == len(s["reports"])
    assert s["summary"]["disagree"] == 0
    assert s["summary"]["undetermined"] == 0


def test_examples_pass():
    assert svtan.examples()["passed"] is True


def test_relations_left_complex():
    text = (DATA / "left_complex.txt").read_text()
    rels = svtan.relations(text, 3)
    assert "x_{14}x_{23} - x_{12}x_{34}" in rels or "x_{12}x_{34} - x_{14}x_{23}" in rels
    assert svtan.verify_relation(text, "x_{234}^2 - x_{23}x_{24}x_{34}")
    assert not svtan.verify_relation(text, "x_{14}x_{23} - x_{12}x_{24}")


def test_bad_parameters_raise():
    with pytest.raises(ValueError):
        svtan.classify([0], [1])
    with pytest.raises(ValueError):
        svtan.classify([1, 2], [1])


def test_module_location():
    import os

    want = os.environ.get("SVTAN_EXPECT_MODULE_DIR")
    if want:
        assert pathlib.Path(svtan.__file__).resolve().parent == pathlib.Path(want).resolve()

import pathlib

import pytest

import derived_heights as dh

INSTANCES = pathlib.Path(__file__).resolve().parents[2] / "instances"


def test_shape_dims_roundtrip():
    dims = dh.shape_dims(1, [(1, 2), (2, 1)], 4)
    assert dims == [4, 2, 1, 1]
    e, e_inf = dh.infer_invariants(dims)
    assert e_inf == 1
    assert e[:2] == [2, 1]


def test_infer_rejects_increasing():
    with pytest.raises(dh.Error):
        dh.infer_invariants([1, 2, 2])


def test_prediction():
    pred = dh.anticyclotomic_prediction(3, 0)
    assert (pred["e1"], pred["e2"], pred["e_infinity"]) == (0, 2, 1)
    assert all(ok for _, ok, _ in pred["checks"])
    assert dh.degeneracy_floor(3, 0) == 3


def test_prediction_degenerate():
    with pytest.raises(dh.DomainError):
        dh.anticyclotomic_prediction(2, 2)


def test_heights_witness():
    res = dh.run("heights", input=str(INSTANCES / "witness_f3_level1.json"))
    assert res.passed
    assert res.report["command"] == "heights"
    assert res.report["verdict"] == "pass"


def test_lfun_synthetic_deterministic():
    a = dh.run("lfun-check", seed=5, ord=2)
    b = dh.run("lfun-check", seed=5, ord=2)
    assert a.passed and a.report == b.report


def test_exit_codes():
    assert dh.run("heights").exit_code == dh.EXIT_INVALID
    capped = dh.run("oracle", input=str(INSTANCES / "jets_swap_f3.json"), max_size=10)
    assert capped.exit_code == dh.EXIT_CAP
    assert capped.report is None

import json

import pytest

import hhokit


def test_kdv_bivectors():
    basis = hhokit.find_bivectors(["u1_x3 + u1*u1_x"], order=3, degree=1)
    assert basis == [["p1_x"], ["p1_x3 + 1/3*u1_x*p1 + 2/3*u1*p1_x"]]


def test_covering_and_residual():
    assert hhokit.cotangent_rules(["u1_x3 + u1*u1_x"]) == ["p1_x3 + u1*p1_x"]
    assert hhokit.bivector_residual(["u1_x3 + u1*u1_x"], ["p1_x"]) == ["0"]
    assert hhokit.bivector_residual(["u1_x3 + u1*u1_x"], ["p1_x3 + u1*p1_x"]) != ["0"]


def test_normal_form_round_trip():
    e = hhokit.normal_form("(u1 + u1_x)*u1_x")
    assert e == "u1_x^2 + u1*u1_x"
    assert hhokit.normal_form(e) == e
    assert hhokit.total_x("u1^2") == "2*u1*u1_x"


def test_run_task_on_catalog_and_dict():
    r = hhokit.run_task("oriented-assoc", "classify")
    assert r["schema"] == 1
    assert r["result"]["linear_degeneracy"] is True
    assert r["result"]["haantjes_zero"] is False

    doc = json.loads(hhokit.example_document("n2-second-order"))
    r = hhokit.run_task(doc, "find-fluxes", operator="g0", degree=2)
    assert r["result"]["dimension"] == 3
    assert r["result"]["affine"] is True


def test_cli_entry_and_errors():
    code, out, _ = hhokit.main(["check-compat", "--example", "kdv", "--operator", "A2"])
    assert code == 0 and "RESULT: PASS" in out
    code, _, err = hhokit.main(["check-op", "--example", "nope"])
    assert code == 2 and "unknown example" in err
    with pytest.raises(hhokit.InputError):
        hhokit.normal_form("u1 +* 2")
    with pytest.raises(hhokit.Error):
        hhokit.run_task({"n": 1, "system": {"kind": "general", "f": ["u1"]}}, "frobnicate")

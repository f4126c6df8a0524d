from pathlib import Path

import pytest

import hopfcyc

SCENARIOS = Path(__file__).resolve().parents[2] / "scenarios"

SMALL = """\
name: small
algebras:
  A:
    builtin: ext:1
tasks:
  - task: check
    what: dga
    algebra: A
  - task: compute
    invariant: HC
    algebra: A
    degrees: [0, 2]
    weights: [0, 0]
"""


def test_builtins_are_listed():
    assert "theta-c" in hopfcyc.builtin_algebras()
    assert "exterior-primitive:1" in hopfcyc.builtin_hopf_algebras()
    assert "gl1" in hopfcyc.builtin_lie_algebras()


def test_ground_field_cohomology():
    assert [hopfcyc.hc("q", n) for n in range(5)] == [1, 0, 1, 0, 1]
    assert [hopfcyc.hh("group:Z2", n) for n in range(4)] == [2, 0, 0, 0]
    hp = hopfcyc.hp("q", 0)
    assert hp["dim"] == 1 and hp["stabilized"]


def test_window_too_small():
    with pytest.raises(hopfcyc.WindowTooSmall):
        hopfcyc.hc("q", 4, max_level=2)


def test_axiom_checks():
    r = hopfcyc.check_cyclic_axioms("theta-c", 3)
    assert r["passed"] and r["checked"] > 0
    assert hopfcyc.check_operator_identities("mat2", 2)["passed"]
    assert hopfcyc.check_dga("ext:2")["violations"] == []


def test_godbillon_vey_class():
    h = hopfcyc.weil_cohomology("gl1", 1)
    assert h["dims"] == [1, 0, 0, 1]
    assert h["representatives"][3] == ["θΩ"]


def test_scenario_text_and_errors():
    report = hopfcyc.run_scenario(SMALL)
    tasks = report["comparable"]["tasks"]
    assert report["comparable"]["passed"]
    assert [t["status"] for t in tasks] == ["pass", "pass"]
    assert hopfcyc.format_scenario(hopfcyc.format_scenario(SMALL)) == hopfcyc.format_scenario(SMALL)

    with pytest.raises(hopfcyc.ScenarioError) as err:
        hopfcyc.run_scenario(SMALL.replace("algebra: A\n    degrees", "algebra: B\n    degrees"))
    assert err.value.line == 11
    assert err.value.field == "tasks[1].algebra"


def test_certificates_round_trip():
    path = str(SCENARIOS / "discrete-gv-z3.yaml")
    report = hopfcyc.run_scenario(path, verbs=["twist-compare"])
    assert report["comparable"]["passed"]
    (index, cert), = report["certificates"].items()
    assert hopfcyc.verify_certificate(path, cert)[0] == "pass"
    cert["task"] = 0
    assert hopfcyc.verify_certificate(path, cert)[0] == "reference-error"

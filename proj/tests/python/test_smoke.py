import pytest

import schoolchoice as sc


def test_fixtures_listed():
    names = sc.fixture_names()
    assert "FX-D3" in names and len(names) == 12


def test_run_and_audit():
    inst = sc.fixture_instance("FX-A1")
    mu = sc.run(inst)
    assert mu == {"1": "s1", "2": "s2", "3": "s1"}
    report = sc.audit(inst, mu)
    assert report["stable"] and report["blocking_pairs"] == []
    bad = sc.audit(inst, {"1": "s0", "2": "s2", "3": "s1"})
    assert not bad["stable"]


def test_serial_dictatorship_order():
    inst = sc.fixture_instance("FX-D3")
    mu = sc.run(inst, "sd", ["6", "5", "4", "3", "2", "1"])
    assert mu["6"] == "s1" and mu["5"] == "s5" and mu["2"] == "s2"


def test_enumerate_stable():
    stable = sc.enumerate_stable(sc.fixture_instance("FX-EX2"))
    assert len(stable) == 2


def test_check_returns_replayable_witness():
    v = sc.check(sc.fixture_instance("FX-A1"), "lnb", mechanism="fx-a1")
    assert v["holds"] is False
    assert v["witnesses"][0]["deviators"]
    assert sc.check(sc.fixture_instance("FX-A1"), "sp")["holds"] is True


def test_characterize_ek1():
    r = sc.characterize(sc.fixture_instance("FX-EK1"), "fx-ek1")
    failing = [v["axiom"] for v in r["axioms"] if not v["holds"]]
    assert failing == ["wlnb"]


def test_cycles_and_ergin():
    inst = sc.fixture_instance("FX-D3")
    profile = dict(inst["preferences"])
    profile["1"] = ["s1", "s0", "s2", "s3", "s4", "s5"]
    r = sc.cycles(inst, {"preferences": profile})
    assert r["cycle"] == ["2", "4", "3", "5"]
    assert r["mu_prime_dominates_eta"] is True
    assert sc.ergin_cycles(sc.fixture_instance("FX-EK1")) == []
    assert sc.ergin_cycles(sc.fixture_instance("FX-EX2"))


def test_reproduce_and_sweep():
    (d3,) = sc.reproduce("FX-D3")
    assert d3["passed"]
    report = sc.sweep("theorem1", n=3, s=2, q=2)
    assert report["counterexamples"] == 0
    assert report == sc.sweep("theorem1", n=3, s=2, q=2)


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        sc.reproduce("FX-X")
    with pytest.raises(ValueError):
        sc.run({"students": ["1"], "schools": []}, "nope")

import math
import pathlib

import pytest

import plap

CONFIGS = pathlib.Path(__file__).resolve().parents[2] / "configs"


def corollary(mu=0.5, n=1024):
    return {
        "p": 2, "q": 0.5, "domain": [0, 1], "window": [0.25, 0.75],
        "m": {"preset": "step", "breaks": [0.25, 0.75], "values": [-mu, 1, -mu]},
        "c": 0, "grid": {"n": n},
    }


def test_constant():
    assert plap.c_pq(2.0, 0.5) == pytest.approx(12.0, abs=1e-12)


def test_check_corollary():
    r = plap.check(corollary())
    assert r["schema"] == plap.REPORT_SCHEMA
    assert r["lambda1"] == pytest.approx(4 * math.pi ** 2, rel=1e-6)
    cor = [c for c in r["conditions"] if c["name"] == "cor"][0]
    assert cor["holds"]


def test_solve_and_verify_round_trip():
    r = plap.solve(corollary())
    assert r["report"]["success"]
    assert min(r["u"][1:-1]) > 0
    v = plap.verify(corollary(), "solution", r["x"], r["u"])
    assert v["passes"]


def test_certify_then_verify():
    c = plap.certify(corollary(), theorem="cor")
    assert c["certificate"]["verified"]["passes"]
    v = plap.verify(corollary(), "sub", c["x"], c["u"], seed=3)
    assert v["passes"]


def test_no_condition_raises():
    with pytest.raises(plap.PlapError) as info:
        plap.solve(corollary(mu=1.0))
    assert info.value.code == "no-certificate"


def test_config_error_names_field():
    bad = corollary()
    bad["q"] = 1.5
    with pytest.raises(plap.PlapError, match="q < p - 1"):
        plap.check(bad)


def test_auxiliary_closed_form():
    x, v = plap.solve_g(3.0, cells=512)
    pc = 1.5
    err = max(abs(vi - (0.5 ** pc - abs(0.5 - xi) ** pc) / pc) for xi, vi in zip(x, v))
    assert err < 1e-4


def test_config_file_and_eigen():
    text = (CONFIGS / "manufactured.json").read_text()
    e = plap.eigen(text)
    assert len(e["x"]) == len(e["u"])
    assert max(e["u"]) == pytest.approx(1.0)

import json

import pytest

from modscale import checks


def test_config_round_trip(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"a": 5, "b": 4, "tolerances": {"pou": 1e-9}}))
    cfg = checks.CheckConfig.load(path)
    assert (cfg.a, cfg.b, cfg.j_min, cfg.j_max) == (5, 4, -12, 8)
    assert cfg.tol("pou") == 1e-9 and cfg.tol("rho") == 1e-15


@pytest.mark.parametrize("obj", [{"colour": 1}, {"tolerances": {"nope": 1}}])
def test_config_rejects_unknown(tmp_path, obj):
    with pytest.raises(ValueError):
        checks.CheckConfig.from_dict(obj)


def test_unknown_suite():
    with pytest.raises(ValueError):
        checks.run_suite("nope")


def test_result_relations():
    assert checks.CheckResult("a", 1, 0.5, "<=", 1.0).passed
    assert not checks.CheckResult("a", 1, float("nan"), "<=", 1.0).passed
    assert checks.CheckResult("a", 1, 1.0, "in", (0.8, 1.25)).passed
    assert not checks.CheckResult("a", 1, 0.7, ">=", 0.9).passed


@pytest.mark.parametrize("name", sorted(checks.SUITES))
def test_quick_suites_pass(name):
    rep = checks.run_suite(name, checks.CheckConfig(quick=True))
    assert rep.passed, rep.text()
    obj = json.loads(rep.to_json())
    assert obj["suite"] == name and len(obj["checks"]) == len(rep.results)


def test_tightened_tolerance_fails():
    cfg = checks.CheckConfig(quick=True, tolerances={"corrupt": 0.9})
    assert not checks.run_suite("pou", cfg).passed

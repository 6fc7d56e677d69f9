"""Smoke tests for the Python bindings."""

import os

import pytest

import msre

MODELS = os.environ.get("MSRE_MODELS_DIR")


def fixture(name):
    assert MODELS, "MSRE_MODELS_DIR must point at the bundled fixtures"
    return os.path.join(MODELS, name)


def test_ufunction_compose_matches_worked_example():
    u1 = msre.UFunction.make([0, 1], [0.4, 0.6])
    u2 = msre.UFunction.make([0, 1, 2], [0.2, 0.3, 0.5])
    u3 = msre.UFunction.make([0, 1], [0.5, 0.5])
    inner = msre.compose([u2, u3], "parallel")
    probs = dict(inner.terms())
    assert probs[0.0] == pytest.approx(0.10, abs=1e-12)
    assert probs[3.0] == pytest.approx(0.25, abs=1e-12)
    top = msre.compose([u1, inner], "series")
    assert top.prob_at_least(1.0) == pytest.approx(0.54, abs=1e-12)


def test_load_validate_analyze():
    sys = msre.load_model(fixture("fig1.model.json"))
    assert msre.validate_model(sys) == []
    assert sys.levels == 2
    got = msre.analyze(sys, time=0.0, demand=1.0)
    assert got["reliability"] == pytest.approx(0.54, abs=1e-12)
    pure = msre.analyze(sys, time=0.0, method="purebn", demand=1.0)
    assert pure["reliability"] == pytest.approx(got["reliability"], abs=1e-12)


def test_parse_error_is_typed():
    with pytest.raises(msre.EngineError):
        msre.parse_model("{ not json")


def test_simulate_is_seed_stable():
    sys = msre.load_model(fixture("fig1.model.json"))
    a = msre.simulate(sys, time=0.0, trials=20000, seed=7, demand=1.0)
    b = msre.simulate(sys, time=0.0, trials=20000, seed=7, demand=1.0)
    assert a == b
    assert abs(a["estimate"] - 0.54) <= 4 * a["std_error"]


def test_optimize_small_design():
    sys = msre.load_model(fixture("units4.model.json"))
    got = msre.optimize(sys)
    assert got["feasible"]
    assert got["exhaustive"]
    assert len(got["design"]) == 4
    assert got["cost_m"] <= 20.0

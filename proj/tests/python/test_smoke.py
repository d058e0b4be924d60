"""Smoke tests for the Python bindings: the main operations round-trip."""

import json
import math

import pytest

lindiff = pytest.importorskip("lindiff")


def test_named_examples_and_json_round_trip():
    spec = lindiff.named_example("brownian_line")
    text = spec.to_json()
    again = lindiff.parse_spec(text)
    assert again.to_json() == text
    assert "brownian_line" in repr(spec)


def test_classify_brownian_line():
    spec = lindiff.named_example("brownian_line")
    report = lindiff.classify(spec)
    assert report["left"]["class"] == "second"
    assert report["recurrent"] is True
    assert report["conservative"] is True
    assert report["strongly_local"] is True


def test_classify_rational_windows():
    spec = lindiff.named_example("rational_windows")
    report = lindiff.classify(spec)
    assert report["right"]["class"] == "third"
    assert report["right"]["dissipative"] is True
    assert report["conservative"] is False


def test_cantor_function_values():
    assert lindiff.cantor_function(0.0, 40) == 0.0
    assert lindiff.cantor_function(1.0, 40) == 1.0
    assert abs(lindiff.cantor_function(0.25, 40) - 1.0 / 3.0) < 1e-11


def test_rational_enumeration():
    assert lindiff.enumerate_rationals(1) == (1, 1)
    assert lindiff.enumerate_rationals(2) == (1, 2)
    assert lindiff.enumerate_rationals(9) == (4, 1)


def test_scale_eval_and_mean_exit():
    cantor = lindiff.named_example("cantor_scale")
    value, err = lindiff.scale_value(cantor, 1.0 / 3.0)
    assert abs(value - 5.0 / 6.0) <= err + 1e-9

    line = lindiff.named_example("brownian_line")
    mean, err = lindiff.mean_exit_time(line, 0.0, 0.5, 1.0)
    assert abs(mean - 0.25) <= err + 1e-9


def test_energy_of_staircase_scale():
    cantor = lindiff.named_example("cantor_scale")
    u = json.dumps(
        {
            "base_x": 0.0,
            "base_val": 0.0,
            "coeffs": [
                {"breakpoints": [], "values": [1.0]},
                {"breakpoints": [], "values": [1.0]},
            ],
        }
    )
    value, err = lindiff.energy_json(cantor, u)
    assert abs(value - 2.0) <= err + 1e-9


def test_subspace_verdict():
    sub = lindiff.named_example("brownian_01")
    sup = lindiff.named_example("cantor_scale")
    assert lindiff.is_regular_subspace(sub, sup)["verdict"] == "yes"


def test_hitting_determinism_and_formula():
    line = lindiff.named_example("brownian_line")
    one = lindiff.estimate_hitting(line, 0.0, 0.25, 1.0, 5000, seed=7, step_h=1.0 / 16)
    two = lindiff.estimate_hitting(line, 0.0, 0.25, 1.0, 5000, seed=7, step_h=1.0 / 16)
    assert one == two
    assert one["pass"]
    assert math.isclose(one["formula_p"], 0.25, abs_tol=1e-12)


def test_chain_check_bridge():
    line = lindiff.named_example("brownian_line")
    grid = [i / 16.0 for i in range(-16, 17)]
    report = lindiff.chain_check(line, grid)
    assert report["irreducible"] is True
    assert report["consistent"] is True
    assert report["cone_dimension"] == 1


def test_invalid_input_raises():
    with pytest.raises(ValueError):
        lindiff.named_example("not_a_spec")

import math

import numpy as np
import pytest

import splitdde


def test_examples_registered():
    assert splitdde.example_ids() == ["dist-auto", "dist-nonauto", "point-auto", "point-nonauto"]


def test_two_steps_match_hand_unroll():
    traj = splitdde.run(splitdde.Problem.example("dist-auto"), steps=2)
    assert traj["times"] == [0.0, 0.5, 1.0]
    assert traj["heads"].shape == (3, 1)
    assert traj["heads"][1, 0] == pytest.approx(1.0614286544971085, rel=1e-14)
    assert traj["heads"][2, 0] == pytest.approx(1.103344312126673, rel=1e-14)


def test_zero_delay_is_exact():
    traj = splitdde.run(splitdde.Problem.example("dist-auto", zero_delay=True), steps=7, record_every=0)
    assert abs(traj["final_head"][0] - math.exp(-1.0)) < 1e-13


def test_reference_value():
    ref = splitdde.reference(splitdde.Problem.example("dist-nonauto"))
    assert ref.value(1.0)[0] == pytest.approx(0.7240281267348543, abs=1e-9)


def test_convergence_order():
    rep = splitdde.convergence(splitdde.Problem.example("dist-nonauto"), refine=2)
    assert rep["strictly_decreasing"]
    assert 0.8 <= rep["product_order"] <= 1.2


def test_stability_and_long_time():
    problem = splitdde.Problem.example("dist-nonauto")
    assert splitdde.stability(problem)["pass"]
    assert splitdde.long_time(problem)["sign_changes"] == 16


def test_config_round_trip():
    text = splitdde.Problem.example("point-nonauto").config_text
    a = splitdde.run(splitdde.Problem.example("point-nonauto"), steps=16)
    b = splitdde.run(splitdde.Problem.from_config(text), steps=16)
    np.testing.assert_array_equal(a["heads"], b["heads"])


def test_history_ops():
    nodes = np.array([[2.0, 1.5, 1.0]])
    assert splitdde.l1_norm(nodes, 0.5) == pytest.approx(1.5)
    assert splitdde.product_norm(np.array([1.0]), nodes, 0.5) == pytest.approx(2.5)
    np.testing.assert_array_equal(splitdde.left_shift(nodes, 0.5, 0.5), [[1.5, 0.0, 0.0]])


def test_errors_map_to_python_exceptions():
    problem = splitdde.Problem.example("dist-auto")
    with pytest.raises(splitdde.AlignmentError):
        splitdde.left_shift(np.zeros((1, 5)), 0.25, 0.3)
    with pytest.raises(ValueError):
        splitdde.run(problem, t_end=2.0, steps=7)
    with pytest.raises(splitdde.ConfigError):
        splitdde.Problem.example("no-such-example")
    hot = "dim = 1\nhead = 1\nhistory.0 = 1\ngenerator.poly = 1e6\ngenerator.bound = 1e6\n"
    with pytest.raises(splitdde.NumericalError):
        splitdde.run(splitdde.Problem.from_config(hot), steps=8)

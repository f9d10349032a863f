import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from frontstab.model import ModelParams, eval_dPdy, eval_P, eval_Q


def test_activator_source_values():
    assert eval_P(0.0, 0.0) == 0.0
    assert eval_P(1.0, 0.0) == 0.0
    assert eval_P(2.0, 1.0) == -5.0


def test_inhibitor_source_values():
    assert eval_Q(0.0, 0.0, 0.45) == 0.0
    assert eval_Q(1.0, -0.45, 0.45) == 0.0
    assert eval_Q(2.0, 1.0, 0.45) == pytest.approx(-1.9, abs=1e-15)


def test_activator_slope_values():
    assert eval_dPdy(0.0) == 1.0
    assert eval_dPdy(1.0 / np.sqrt(3.0)) == pytest.approx(0.0, abs=1e-15)
    assert eval_dPdy(1.0) == -2.0


def test_sources_accept_arrays():
    y = np.array([0.0, 1.0, 2.0])
    theta = np.array([0.0, 0.0, 1.0])
    np.testing.assert_allclose(eval_P(y, theta), [0.0, 0.0, -5.0])
    np.testing.assert_allclose(eval_Q(y, theta, 0.45), [0.0, -0.45, -1.9])


@given(st.floats(-1e3, 1e3), st.floats(0.01, 0.99))
def test_inhibitor_nullcline_is_exact(y, gamma):
    assert eval_Q(y, -gamma * y, gamma) == 0.0


@pytest.mark.parametrize("gamma", [0.1, 0.45, 0.9])
def test_bistable_rest_states(gamma):
    # On the nullcline theta = -gamma*y the kinetics reduce to
    # -y**3 + (1-gamma)*y with roots {0, +-sqrt(1-gamma)}.
    roots = np.sort(np.roots([-1.0, 0.0, 1.0 - gamma, 0.0]))
    expected = np.sort([-np.sqrt(1 - gamma), 0.0, np.sqrt(1 - gamma)])
    np.testing.assert_allclose(roots, expected, atol=1e-12)
    for r in expected:
        assert abs(eval_P(r, -gamma * r)) < 1e-12


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(L=-1.0, R=8.0, gamma=0.45, epsilon=0.1),
        dict(L=20.0, R=0.0, gamma=0.45, epsilon=0.1),
        dict(L=20.0, R=8.0, gamma=1.0, epsilon=0.1),
        dict(L=20.0, R=8.0, gamma=1.3, epsilon=0.1),
        dict(L=20.0, R=8.0, gamma=0.0, epsilon=0.1),
        dict(L=20.0, R=8.0, gamma=0.45, epsilon=0.0),
        dict(L=20.0, R=8.0, gamma=0.45, epsilon=1.0),
    ],
)
def test_invalid_params_rejected(kwargs):
    with pytest.raises(ValueError):
        ModelParams(**kwargs)

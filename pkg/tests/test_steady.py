import numpy as np
import pytest

from frontstab.errors import NumericalError
from frontstab.model import ModelParams
from frontstab.steady import FrontProfile, eval_front, solve_front

P = ModelParams(L=20.0, R=8.0, gamma=0.45, epsilon=0.1)


def test_front_invariants(front_profile):
    p = front_profile
    assert p.residual_norm <= 1e-10
    np.testing.assert_allclose(p.thetas, -P.gamma * p.ys, atol=1e-12)
    # odd about z = L/2
    center = (len(p.grid_z) - 1) // 2
    assert abs(p.ys[center]) < 1e-10
    np.testing.assert_allclose(p.ys, -p.ys[::-1], atol=1e-9)
    # no-flux ends: second-order one-sided derivative (consistent with
    # the scheme's order; the first-order quotient reads the O(h*y'')
    # boundary curvature instead of the flux)
    h = p.grid_z[1] - p.grid_z[0]
    assert abs(-3 * p.ys[0] + 4 * p.ys[1] - p.ys[2]) / (2 * h) < 1e-6
    assert abs(3 * p.ys[-1] - 4 * p.ys[-2] + p.ys[-3]) / (2 * h) < 1e-6


def test_front_plateau_matches_kink_asymptote(front_profile):
    assert front_profile.ys[-1] == pytest.approx(np.sqrt(0.55), abs=1e-3)


def test_gamma_zero_profile_matches_analytic_kink():
    params = ModelParams(L=40.0, R=8.0, gamma=1e-12, epsilon=0.1)
    profile = solve_front(params, 1601)
    z = profile.grid_z
    kink = np.tanh((z - 20.0) / np.sqrt(2.0))
    interior = (z > 4.0) & (z < 36.0)
    assert np.max(np.abs(profile.ys[interior] - kink[interior])) < 1e-4


def test_second_order_grid_convergence():
    coarse = solve_front(P, 101)
    medium = solve_front(P, 201)
    fine = solve_front(P, 401)
    # compare on the shared (coarse) nodes, away from the ends
    idx = slice(10, 91)
    d1 = np.max(np.abs(medium.ys[::2][idx] - coarse.ys[idx]))
    d2 = np.max(np.abs(fine.ys[::4][idx] - medium.ys[::2][idx]))
    assert d1 > 0
    assert 2.5 < d1 / d2 < 6.5  # O(h^2): ratio ~ 4


def test_stationary_residual_of_full_system(front_profile):
    # the r-independent profile solves the 2-D stationary equations
    p = front_profile
    h = p.grid_z[1] - p.grid_z[0]
    lap = np.empty_like(p.ys)
    lap[1:-1] = (p.ys[:-2] - 2 * p.ys[1:-1] + p.ys[2:]) / h**2
    lap[0] = 2 * (p.ys[1] - p.ys[0]) / h**2
    lap[-1] = 2 * (p.ys[-2] - p.ys[-1]) / h**2
    y_residual = lap + (-p.ys**3 + p.ys + p.thetas)
    theta_residual = -P.gamma * p.ys - p.thetas
    assert np.max(np.abs(y_residual)) <= 1e-8
    assert np.max(np.abs(theta_residual)) <= 1e-12


def test_eval_front_interpolation(front_profile):
    p = front_profile
    y, theta = eval_front(p, p.grid_z)
    np.testing.assert_allclose(y, p.ys, rtol=0, atol=1e-14)
    np.testing.assert_allclose(theta, p.thetas, rtol=0, atol=1e-14)
    y_mid, theta_mid = eval_front(p, 10.0)
    assert abs(y_mid) < 1e-10 and abs(theta_mid) < 1e-10
    y_end, _ = eval_front(p, 20.0)
    assert y_end == pytest.approx(np.sqrt(0.55), abs=1e-3)
    with pytest.raises(ValueError):
        eval_front(p, 20.0 + 1e-9)
    with pytest.raises(ValueError):
        eval_front(p, -0.5)


def test_solver_input_validation():
    with pytest.raises(ValueError):
        solve_front(P, 32)


def test_profile_requires_increasing_grid():
    with pytest.raises(ValueError):
        FrontProfile(
            grid_z=np.array([0.0, 2.0, 1.0]),
            ys=np.zeros(3),
            thetas=np.zeros(3),
            residual_norm=0.0,
        )


def test_nonconvergence_reports_residual(monkeypatch):
    import frontstab.steady as steady

    monkeypatch.setattr(steady, "_MAX_NEWTON_ITERATIONS", 1)
    with pytest.raises(NumericalError, match="residual"):
        solve_front(P, 101)

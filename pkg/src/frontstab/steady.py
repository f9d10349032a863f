"""Stationary planar front of the bistable system.

With the inhibitor slaved to the activator (theta_s = -gamma*y_s), the
stationary activator profile solves the boundary-value problem

    y'' = y**3 - (1 - gamma) * y,   y'(0) = y'(L) = 0,

whose infinite-domain limit is the kink
sqrt(1-gamma) * tanh(sqrt((1-gamma)/2) * (z - L/2)).  The solver runs
damped Newton iteration on a second-order central-difference
discretization with ghost-point Neumann closure, starting from the kink.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.linalg import solve_banded

from .errors import NumericalError
from .model import ModelParams

__all__ = ["FrontProfile", "solve_front", "eval_front"]

_MAX_NEWTON_ITERATIONS = 50
_RESIDUAL_TOL = 1e-10


@dataclass
class FrontProfile:
    """Converged stationary front sampled on a uniform z grid."""

    grid_z: np.ndarray
    ys: np.ndarray
    thetas: np.ndarray
    residual_norm: float
    _y_spline: CubicSpline = field(init=False, repr=False, compare=False)
    _theta_spline: CubicSpline = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        self.grid_z = np.asarray(self.grid_z, dtype=float)
        self.ys = np.asarray(self.ys, dtype=float)
        self.thetas = np.asarray(self.thetas, dtype=float)
        if not np.all(np.diff(self.grid_z) > 0):
            raise ValueError("grid_z must be strictly increasing")
        # Clamped ends match the no-flux boundary conditions.
        self._y_spline = CubicSpline(self.grid_z, self.ys, bc_type="clamped")
        self._theta_spline = CubicSpline(self.grid_z, self.thetas, bc_type="clamped")

    @property
    def length(self) -> float:
        return float(self.grid_z[-1])


def _residual(y: np.ndarray, h: float, gamma: float) -> np.ndarray:
    """Discrete y'' + (1-gamma)*y - y**3 with mirrored ghost nodes."""
    F = np.empty_like(y)
    F[1:-1] = (y[:-2] - 2.0 * y[1:-1] + y[2:]) / h**2
    F[0] = 2.0 * (y[1] - y[0]) / h**2
    F[-1] = 2.0 * (y[-2] - y[-1]) / h**2
    F += (1.0 - gamma) * y - y**3
    return F


def solve_front(params: ModelParams, n_nodes: int = 401) -> FrontProfile:
    """Newton-solve the stationary front; raises NumericalError on failure.

    An odd n_nodes puts a grid node at z = L/2 so the odd symmetry of the
    front is preserved exactly by the iteration.
    """
    if n_nodes < 64:
        raise ValueError(f"n_nodes must be >= 64, got {n_nodes}")
    if not params.gamma < 1:
        raise ValueError("no bistable front exists for gamma >= 1")

    L, gamma = params.L, params.gamma
    h = L / (n_nodes - 1)
    z = np.linspace(0.0, L, n_nodes)
    amp = np.sqrt(1.0 - gamma)
    width = np.sqrt((1.0 - gamma) / 2.0)
    y = amp * np.tanh(width * (z - L / 2.0))

    def pin_center(y):
        # Project onto the odd subspace about L/2: the translational mode
        # makes the Jacobian nearly singular, and without the projection
        # roundoff lets the front creep off center.
        return 0.5 * (y - y[::-1])

    F = _residual(y, h, gamma)
    norm = np.max(np.abs(F))
    for _ in range(_MAX_NEWTON_ITERATIONS):
        if norm <= _RESIDUAL_TOL:
            break
        bands = np.zeros((3, n_nodes))
        bands[1] = -2.0 / h**2 + (1.0 - gamma) - 3.0 * y**2
        bands[0][1:] = 1.0 / h**2
        bands[2][:-1] = 1.0 / h**2
        bands[0][1] = 2.0 / h**2
        bands[2][-2] = 2.0 / h**2
        step = solve_banded((1, 1), bands, -F)
        # Halving line search keeps the iteration inside the kink's basin.
        damping = 1.0
        while damping > 1e-6:
            trial = pin_center(y + damping * step)
            F_trial = _residual(trial, h, gamma)
            norm_trial = np.max(np.abs(F_trial))
            if norm_trial < norm:
                y, F, norm = trial, F_trial, norm_trial
                break
            damping /= 2.0
        else:
            break
    if norm > _RESIDUAL_TOL:
        raise NumericalError(
            f"front solver did not converge: residual max-norm {norm:.3e}"
        )
    return FrontProfile(grid_z=z, ys=y, thetas=-gamma * y, residual_norm=float(norm))


def eval_front(profile: FrontProfile, z):
    """Cubic interpolation of (y_s, theta_s); exact at the grid nodes."""
    z = np.asarray(z, dtype=float)
    if np.any(z < profile.grid_z[0]) or np.any(z > profile.grid_z[-1]):
        raise ValueError("z outside the front profile domain")
    return profile._y_spline(z), profile._theta_spline(z)

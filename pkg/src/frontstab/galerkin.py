"""Assembly of the truncated linear model around the stationary front.

Projecting the linearized dynamics onto the first N Laplacian eigenmodes
gives the 2N-state system

    d/dt [a; b] = [[-Lambda + J, I], [-eps*gamma*I, -eps*I]] [a; b] + [beta; 0] v
    w = [h, 0] [a; b]

where J is the Galerkin matrix of the front-dependent weight -3*y_s^2 + 1,
beta collects the actuator shapes, and h samples the modes at the sensor
points (L/2, r_d).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import make_interp_spline

from .basis import Eigenpair, ModeIndex, enumerate_basis, eval_eigenfunction, find_mode
from .model import ModelParams, eval_dPdy
from .steady import FrontProfile

__all__ = [
    "SensorSpec",
    "ActuatorSpec",
    "SpectralSystem",
    "assemble_jacobian",
    "assemble_state_matrix",
    "assemble_output_matrix",
    "assemble_input_matrix",
    "build_system",
]

_GL_PANEL_ORDER = 8


@dataclass(frozen=True)
class SensorSpec:
    """Point sensors on the front line z = L/2.

    Positions are normalized to ascending order; the row order of the
    output matrix follows this normalized order.
    """

    r_positions: tuple[float, ...]

    def __init__(self, r_positions) -> None:
        positions = tuple(sorted(float(r) for r in r_positions))
        if len(positions) < 1:
            raise ValueError("at least one sensor is required")
        if len(set(positions)) != len(positions):
            raise ValueError(f"sensor positions must be pairwise distinct: {positions}")
        object.__setattr__(self, "r_positions", positions)

    @property
    def eta(self) -> int:
        return len(self.r_positions)


@dataclass(frozen=True)
class ActuatorSpec:
    """Actuator shape: spatially constant, or one basis eigenfunction."""

    mode: ModeIndex | None = None

    @classmethod
    def constant(cls) -> "ActuatorSpec":
        return cls(mode=None)

    @classmethod
    def eigenmode(cls, i: int, j: int) -> "ActuatorSpec":
        return cls(mode=ModeIndex(i, j))

    @property
    def is_constant(self) -> bool:
        return self.mode is None


@dataclass(frozen=True)
class SpectralSystem:
    """Truncated state-space model with its assembly ingredients."""

    params: ModelParams
    N: int
    modes: tuple[Eigenpair, ...]
    A: np.ndarray      # 2N x 2N
    beta: np.ndarray   # 2N x eta, nonzeros in the first N rows
    H: np.ndarray      # eta x 2N, nonzeros in the first N columns
    J: np.ndarray      # N x N
    sensors: SensorSpec
    actuators: tuple[ActuatorSpec, ...]

    @property
    def eta(self) -> int:
        return self.sensors.eta

    @property
    def state_dim(self) -> int:
        return 2 * self.N

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.array([p.eigenvalue for p in self.modes])


def _composite_gauss_legendre(a: float, b: float, n_points: int):
    """Composite Gauss-Legendre rule with at least n_points nodes."""
    panels = max(1, -(-n_points // _GL_PANEL_ORDER))
    xg, wg = leggauss(_GL_PANEL_ORDER)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (half[:, None] * xg[None, :] + mid[:, None]).ravel()
    weights = (half[:, None] * wg[None, :]).ravel()
    return nodes, weights


def assemble_jacobian(
    profile: FrontProfile,
    basis: Sequence[Eigenpair],
    params: ModelParams,
    n_quad: int = 400,
) -> np.ndarray:
    """Galerkin matrix of the weight -3*y_s(z)**2 + 1.

    The front is r-independent, so the r integral is exactly
    delta_{jl} by orthogonality and only the z integral is computed by
    quadrature.  The z factors cos((i-1)*pi*z/L), normalized on [0, L],
    give a block that is independent of the transverse index.
    """
    L = params.L
    zq, wq = _composite_gauss_legendre(0.0, L, n_quad)
    # Quintic reconstruction: the composite rule needs more smoothness
    # than the profile's C2 interpolant to stay converged below 1e-10
    # when the point count is doubled.
    k = min(5, profile.grid_z.size - 1)
    y_vals = make_interp_spline(profile.grid_z, profile.ys, k=k)(zq)
    weight = wq * eval_dPdy(y_vals)

    i_values = sorted({p.mode.i for p in basis})
    position = {i: a for a, i in enumerate(i_values)}
    # Rows of E are the orthonormal z factors sampled at the quadrature nodes.
    E = np.empty((len(i_values), zq.size))
    for a, i in enumerate(i_values):
        c = 1.0 if i == 1 else np.sqrt(2.0)
        E[a] = (c / np.sqrt(L)) * np.cos((i - 1) * np.pi * zq / L)
    z_block = E @ (weight[None, :] * E).T

    N = len(basis)
    J = np.zeros((N, N))
    for e, pe in enumerate(basis):
        for m, pm in enumerate(basis):
            if pe.mode.j == pm.mode.j:
                J[e, m] = z_block[position[pe.mode.i], position[pm.mode.i]]
    return J


def assemble_state_matrix(
    J: np.ndarray, eigenvalues: np.ndarray, params: ModelParams
) -> np.ndarray:
    J = np.asarray(J, dtype=float)
    N = J.shape[0]
    if J.shape != (N, N):
        raise ValueError(f"J must be square, got shape {J.shape}")
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    if eigenvalues.shape != (N,):
        raise ValueError("eigenvalue list does not match J")
    eye = np.eye(N)
    eps = params.epsilon
    return np.block(
        [
            [-np.diag(eigenvalues) + J, eye],
            [-eps * params.gamma * eye, -eps * eye],
        ]
    )


def assemble_output_matrix(
    sensors: SensorSpec, basis: Sequence[Eigenpair], params: ModelParams
) -> np.ndarray:
    """Sensor samples of the modes at (L/2, r_d); b-partition columns zero."""
    for r in sensors.r_positions:
        if not 0 < r < params.R:
            raise ValueError(f"sensor position {r} outside (0, {params.R})")
    N = len(basis)
    H = np.zeros((sensors.eta, 2 * N))
    for d, r in enumerate(sensors.r_positions):
        for f, pair in enumerate(basis):
            H[d, f] = eval_eigenfunction(pair, params, params.L / 2.0, r)
    return H


def assemble_input_matrix(
    actuators: Sequence[ActuatorSpec],
    basis: Sequence[Eigenpair],
    params: ModelParams,
) -> np.ndarray:
    """Projections of the actuator shapes onto the basis.

    An eigenmode actuator is the basis function itself, giving a unit
    column.  The constant actuator psi = 1 projects onto the constant
    mode with coefficient sqrt(L*R); any positive rescaling would be
    absorbed by the gain and cannot move the system zeros.
    """
    if len(actuators) == 0:
        raise ValueError("at least one actuator is required")
    N = len(basis)
    beta = np.zeros((2 * N, len(actuators)))
    for d, act in enumerate(actuators):
        if act.is_constant:
            beta[find_mode(basis, (1, 1)), d] = np.sqrt(params.L * params.R)
        else:
            beta[find_mode(basis, act.mode), d] = 1.0
    return beta


def _truncation_shift(params, profile, basis, A, n_quad, extra=10, top=6):
    """Largest drift of the leading eigenvalues when the basis grows."""
    basis_big = enumerate_basis(params, len(basis) + extra)
    J_big = assemble_jacobian(profile, basis_big, params, n_quad)
    A_big = assemble_state_matrix(
        J_big, np.array([p.eigenvalue for p in basis_big]), params
    )
    w_small = np.linalg.eigvals(A)
    w_big = np.linalg.eigvals(A_big)
    leading = w_small[np.argsort(-w_small.real)][:top]
    shifts = [np.min(np.abs(w_big - s)) / max(1.0, abs(s)) for s in leading]
    return float(np.max(shifts)), leading


def build_system(
    params: ModelParams,
    profile: FrontProfile,
    sensors: SensorSpec,
    actuators: Sequence[ActuatorSpec],
    N: int = 23,
    *,
    basis: Sequence[Eigenpair] | None = None,
    n_quad: int = 400,
    truncation_check: bool = False,
) -> SpectralSystem:
    """Assemble the full truncated system for one sensor/actuator layout.

    With truncation_check=True the leading six eigenvalues are recomputed
    with ten extra modes and a warning is emitted if any of them drifts by
    more than 1% (relative, with an absolute floor of 0.01 so the
    near-zero translational eigenvalue does not trip the check).
    """
    if basis is None:
        basis = enumerate_basis(params, N)
    else:
        basis = list(basis)
        N = len(basis)
    J = assemble_jacobian(profile, basis, params, n_quad)
    eigenvalues = np.array([p.eigenvalue for p in basis])
    A = assemble_state_matrix(J, eigenvalues, params)
    H = assemble_output_matrix(sensors, basis, params)
    beta = assemble_input_matrix(actuators, basis, params)

    if truncation_check:
        shift, leading = _truncation_shift(params, profile, basis, A, n_quad)
        if shift > 0.01:
            warnings.warn(
                f"truncation order N={N} may be inadequate: a leading eigenvalue "
                f"moves by {shift:.1%} when 10 modes are added "
                f"(leading eigenvalues {np.round(leading, 4)})",
                stacklevel=2,
            )

    return SpectralSystem(
        params=params,
        N=N,
        modes=tuple(basis),
        A=A,
        beta=beta,
        H=H,
        J=J,
        sensors=sensors,
        actuators=tuple(actuators),
    )

"""Nonlinear simulation of the full reaction-diffusion system.

Method of lines on a uniform tensor grid: second-order central
differences with mirrored-ghost Neumann closure on all four edges,
explicit RK4 in time.  An optional point-sensor controller adds

    control_signal(z, r, t) = k * sum_d m_d(t) * psi_d(z, r)

to the activator equation, where the mixed deviations m = M (w - w*) are
read by bilinear interpolation at the sensor points (L/2, r_d) at every
stage.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil

import numpy as np

from . import kernels
from .basis import ModeIndex, make_eigenpair, eval_eigenfunction
from .design import ControllerSpec
from .errors import NumericalError
from .model import ModelParams
from .steady import FrontProfile, eval_front

__all__ = [
    "Field2D",
    "FrontCurve",
    "Trajectory",
    "make_front_init",
    "front_position",
    "simulate",
    "default_dt",
]

_CFL_LIMIT = 0.2
_DEFAULT_CFL = 0.1
_MAX_PERTURBATION = 0.2


@dataclass(frozen=True)
class Field2D:
    """Activator/inhibitor values on the uniform grid covering the domain."""

    y: np.ndarray
    theta: np.ndarray
    dz: float
    dr: float

    def __post_init__(self) -> None:
        y = np.ascontiguousarray(self.y, dtype=float)
        theta = np.ascontiguousarray(self.theta, dtype=float)
        if y.ndim != 2 or y.shape != theta.shape:
            raise ValueError("y and theta must be 2-D arrays of equal shape")
        if not (self.dz > 0 and self.dr > 0):
            raise ValueError("grid spacings must be positive")
        if not (np.isfinite(y).all() and np.isfinite(theta).all()):
            raise ValueError("field values must be finite")
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "theta", theta)

    @property
    def nz(self) -> int:
        return self.y.shape[0]

    @property
    def nr(self) -> int:
        return self.y.shape[1]

    @property
    def extent_z(self) -> float:
        return self.dz * (self.nz - 1)

    @property
    def extent_r(self) -> float:
        return self.dr * (self.nr - 1)

    @property
    def grid_z(self) -> np.ndarray:
        return self.dz * np.arange(self.nz)

    @property
    def grid_r(self) -> np.ndarray:
        return self.dr * np.arange(self.nr)

    def copy(self) -> "Field2D":
        return Field2D(self.y.copy(), self.theta.copy(), self.dz, self.dr)


@dataclass(frozen=True)
class FrontCurve:
    """Front line z_front(r) traced by the zero crossing of the activator."""

    r: np.ndarray
    z_front: np.ndarray     # NaN where the row has no sign change
    found: np.ndarray
    center: float

    @property
    def complete(self) -> bool:
        return bool(self.found.all())

    @property
    def mean_displacement(self) -> float:
        if not self.found.any():
            return float("nan")
        return float(np.mean(self.z_front[self.found]) - self.center)

    @property
    def max_deviation(self) -> float:
        if not self.found.any():
            return float("nan")
        return float(np.max(np.abs(self.z_front[self.found] - self.center)))


@dataclass(frozen=True)
class Trajectory:
    """Sampled simulation history."""

    times: np.ndarray
    snapshots: tuple[Field2D, ...]
    front_curves: tuple[FrontCurve, ...]
    control_history: np.ndarray    # (n_samples, eta)

    def __post_init__(self) -> None:
        if not np.all(np.diff(self.times) > 0):
            raise ValueError("sample times must be strictly increasing")

    def max_front_deviation(self) -> np.ndarray:
        return np.array([c.max_deviation for c in self.front_curves])


def default_dt(dz: float, dr: float) -> float:
    return _DEFAULT_CFL * min(dz, dr) ** 2


def make_front_init(
    profile: FrontProfile,
    params: ModelParams,
    nz: int,
    nr: int,
    mode=None,
    amplitude: float = 0.0,
) -> Field2D:
    """Planar front replicated across r, optionally perturbed in one mode.

    The perturbation is added to the activator only; the inhibitor keeps
    its steady profile.  A perturbation with the inhibitor slaved as
    theta = -gamma*y would lie exactly in the neutral translation
    direction and would not excite the front instability.
    """
    if nz < 3 or nr < 3:
        raise ValueError("grid must have at least 3 nodes per direction")
    if abs(amplitude) > _MAX_PERTURBATION:
        raise ValueError(
            f"perturbation amplitude {amplitude} exceeds the small-perturbation "
            f"limit {_MAX_PERTURBATION}"
        )
    dz = params.L / (nz - 1)
    dr = params.R / (nr - 1)
    zg = np.linspace(0.0, params.L, nz)
    rg = np.linspace(0.0, params.R, nr)
    ys, thetas = eval_front(profile, zg)
    y = np.tile(ys[:, None], (1, nr))
    theta = np.tile(thetas[:, None], (1, nr))
    if mode is not None and amplitude != 0.0:
        pair = make_eigenpair(ModeIndex(*mode), params)
        y = y + amplitude * eval_eigenfunction(pair, params, zg[:, None], rg[None, :])
    return Field2D(y, theta, dz, dr)


def front_position(field: Field2D) -> FrontCurve:
    """Per-row linear-interpolated zero crossing of the activator.

    Rows without a sign change (front left the domain) are reported
    through the `found` mask rather than raised.
    """
    y = field.y
    zg = field.grid_z
    center = field.extent_z / 2.0
    nr = field.nr
    z_front = np.full(nr, np.nan)
    found = np.zeros(nr, dtype=bool)
    for jr in range(nr):
        col = y[:, jr]
        prod = col[:-1] * col[1:]
        crossings = np.nonzero(prod <= 0)[0]
        crossings = crossings[col[crossings] != col[crossings + 1]]
        if crossings.size == 0:
            continue
        mid = 0.5 * (zg[crossings] + zg[crossings + 1])
        i = crossings[np.argmin(np.abs(mid - center))]
        z_front[jr] = zg[i] + field.dz * col[i] / (col[i] - col[i + 1])
        found[jr] = True
    return FrontCurve(r=field.grid_r, z_front=z_front, found=found, center=center)


def _prepare_control(spec: ControllerSpec, params: ModelParams, field: Field2D):
    eta = spec.sensors.eta
    nz, nr = field.nz, field.nr
    psi = np.empty((eta, nz, nr))
    zg, rg = field.grid_z, field.grid_r
    for d, act in enumerate(spec.actuators):
        if act.is_constant:
            psi[d] = 1.0
        else:
            pair = make_eigenpair(act.mode, params)
            psi[d] = eval_eigenfunction(pair, params, zg[:, None], rg[None, :])

    siz = np.empty(eta, dtype=np.int64)
    sir = np.empty(eta, dtype=np.int64)
    weights = np.empty((eta, 4))
    z_star = params.L / 2.0
    iz = min(int(z_star / field.dz), nz - 2)
    tz = z_star / field.dz - iz
    for d, r_d in enumerate(spec.sensors.r_positions):
        ir = min(int(r_d / field.dr), nr - 2)
        tr = r_d / field.dr - ir
        siz[d] = iz
        sir[d] = ir
        weights[d] = [
            (1 - tz) * (1 - tr),
            (1 - tz) * tr,
            tz * (1 - tr),
            tz * tr,
        ]
    return {
        "kgain": spec.gain,
        "psi": psi,
        "mix": np.ascontiguousarray(spec.mixing, dtype=float),
        "siz": siz,
        "sir": sir,
        "sw": weights,
        "setp": np.array(spec.setpoints, dtype=float),
    }


def _control_amplitudes(ctl, y: np.ndarray) -> np.ndarray:
    eta = ctl["psi"].shape[0]
    dev = np.empty(eta)
    for d in range(eta):
        iz, ir = ctl["siz"][d], ctl["sir"][d]
        w = ctl["sw"][d]
        dev[d] = (
            w[0] * y[iz, ir]
            + w[1] * y[iz, ir + 1]
            + w[2] * y[iz + 1, ir]
            + w[3] * y[iz + 1, ir + 1]
            - ctl["setp"][d]
        )
    return ctl["kgain"] * (ctl["mix"] @ dev)


def simulate(
    params: ModelParams,
    init: Field2D,
    t_final: float,
    *,
    controller: ControllerSpec | None = None,
    dt: float | None = None,
    sample_every: int | None = None,
) -> Trajectory:
    """Integrate the system from `init`, sampling every `sample_every` steps.

    The time step must satisfy the diffusive stability bound
    dt <= 0.2 * min(dz, dr)**2 of the explicit scheme.
    """
    if t_final <= 0:
        raise ValueError(f"t_final must be positive, got {t_final}")
    if abs(init.extent_z - params.L) > 1e-12 * max(1.0, params.L) or abs(
        init.extent_r - params.R
    ) > 1e-12 * max(1.0, params.R):
        raise ValueError("initial field grid does not cover the model domain")
    dmin = min(init.dz, init.dr)
    if dt is None:
        dt = default_dt(init.dz, init.dr)
    if dt > _CFL_LIMIT * dmin**2 * (1 + 1e-12):
        raise ValueError(
            f"dt={dt:.3e} violates the stability bound "
            f"{_CFL_LIMIT} * min(dz, dr)**2 = {_CFL_LIMIT * dmin**2:.3e}"
        )
    n_steps = int(ceil(t_final / dt - 1e-9))
    if sample_every is None:
        sample_every = max(1, n_steps // 100)

    y = np.ascontiguousarray(init.y, dtype=float).copy()
    th = np.ascontiguousarray(init.theta, dtype=float).copy()
    nz, nr = y.shape
    scratch = [np.empty_like(y) for _ in range(6)]

    if controller is not None:
        ctl = _prepare_control(controller, params, init)
    else:
        ctl = {
            "kgain": 0.0,
            "psi": np.zeros((0, nz, nr)),
            "mix": np.zeros((0, 0)),
            "siz": np.zeros(0, dtype=np.int64),
            "sir": np.zeros(0, dtype=np.int64),
            "sw": np.zeros((0, 4)),
            "setp": np.zeros(0),
        }
    kernel_args = (
        1.0 / init.dz**2,
        1.0 / init.dr**2,
        params.gamma,
        params.epsilon,
        ctl["kgain"],
        ctl["psi"],
        ctl["mix"],
        ctl["siz"],
        ctl["sir"],
        ctl["sw"],
        ctl["setp"],
    )

    def record(t: float):
        snap = Field2D(y.copy(), th.copy(), init.dz, init.dr)
        times.append(t)
        snapshots.append(snap)
        curves.append(front_position(snap))
        controls.append(_control_amplitudes(ctl, y) if controller is not None else np.zeros(0))

    times: list[float] = []
    snapshots: list[Field2D] = []
    curves: list[FrontCurve] = []
    controls: list[np.ndarray] = []
    record(0.0)

    done = 0
    while done < n_steps:
        block = min(sample_every, n_steps - done)
        completed = kernels.run_steps(y, th, block, dt, *kernel_args, *scratch)
        done += completed
        if completed < block:
            raise NumericalError(
                f"simulation diverged: non-finite field state after step {done + 1}"
            )
        if not np.isfinite(y).all():
            raise NumericalError(
                f"simulation diverged: non-finite field state after step {done}"
            )
        record(done * dt)

    return Trajectory(
        times=np.array(times),
        snapshots=tuple(snapshots),
        front_curves=tuple(curves),
        control_history=np.array(controls),
    )

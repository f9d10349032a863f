"""Controller design search: sensor/actuator selection, mixing, and gain.

The search strategy:

1. Check solvability: an unstable decoupling zero of (A, H) blocks every
   input matrix (and dually for (A, beta) when the actuators are fixed).
2. Pick actuator shapes, simplest first, so that the leading finite zero
   of the resulting square system is in the open left half plane and
   H*beta is nonsingular.
3. If some eigenvalue of H*beta has nonpositive real part, insert a
   static precompensator M so that M*H*beta passes.
4. Choose the gain k < 0 by scanning a log-spaced grid and minimizing the
   closed-loop spectral abscissa.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .basis import Eigenpair, ModeIndex
from .galerkin import (
    ActuatorSpec,
    SensorSpec,
    SpectralSystem,
    assemble_input_matrix,
    build_system,
)
from .model import ModelParams
from .steady import FrontProfile, eval_front
from .zeros import (
    InfiniteZeroCheck,
    Precompensator,
    ZeroSet,
    closed_loop_spectrum,
    finite_zeros,
    infinite_zero_check,
    input_decoupling_zeros,
    output_decoupling_zeros,
)

__all__ = [
    "SolvabilityReport",
    "ControllerSpec",
    "GainSelection",
    "DesignOutcome",
    "check_output_solvability",
    "check_input_solvability",
    "default_candidate_modes",
    "design_single_actuator",
    "search_two_actuator",
    "search_actuators",
    "select_gain",
    "verify_controller",
]

_SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])


@dataclass(frozen=True)
class SolvabilityReport:
    solvable: bool
    blocking: np.ndarray           # decoupling zeros with nonnegative real part
    decoupling_zeros: np.ndarray


@dataclass(frozen=True)
class ControllerSpec:
    """A complete design: where to sense, what to actuate, how hard to push."""

    sensors: SensorSpec
    actuators: tuple[ActuatorSpec, ...]
    gain: float
    precompensator: Precompensator | None
    leading_zero: complex
    setpoints: tuple[float, ...]
    stability_interval: tuple[float, float]

    def __post_init__(self) -> None:
        if len(self.actuators) != self.sensors.eta:
            raise ValueError("one actuator per sensor is required")
        if len(self.setpoints) != self.sensors.eta:
            raise ValueError("one set point per sensor is required")
        if not self.gain < 0:
            raise ValueError(f"gain must be negative, got {self.gain}")
        if not self.leading_zero.real < 0:
            raise ValueError(
                f"leading finite zero {self.leading_zero} is not in the left half plane"
            )

    @property
    def mixing(self) -> np.ndarray:
        if self.precompensator is None:
            return np.eye(self.sensors.eta)
        return self.precompensator.M


@dataclass(frozen=True)
class GainSelection:
    success: bool
    k: float | None
    abscissa: float | None
    stability_interval: tuple[float, float] | None
    gains: np.ndarray
    abscissas: np.ndarray


@dataclass(frozen=True)
class DesignOutcome:
    success: bool
    spec: ControllerSpec | None
    leading_zero: complex | None
    reason: str
    system: SpectralSystem | None = None
    input_solvability: SolvabilityReport | None = None
    output_solvability: SolvabilityReport | None = None
    infinite_check: InfiniteZeroCheck | None = None
    gain_selection: GainSelection | None = None
    diagnostics: tuple = field(default=())


def check_output_solvability(system: SpectralSystem, *, seed: int = 0) -> SolvabilityReport:
    """No actuator choice can work if (A, H) hides an unstable mode."""
    zs = output_decoupling_zeros(system.A, system.H, seed=seed)
    blocking = zs[zs.real >= 0] if zs.size else zs
    return SolvabilityReport(blocking.size == 0, blocking, zs)


def check_input_solvability(system: SpectralSystem, *, seed: int = 0) -> SolvabilityReport:
    """No sensor placement can work if (A, beta) cannot reach an unstable mode."""
    zs = input_decoupling_zeros(system.A, system.beta, seed=seed)
    blocking = zs[zs.real >= 0] if zs.size else zs
    return SolvabilityReport(blocking.size == 0, blocking, zs)


def default_candidate_modes(
    basis: Sequence[Eigenpair], limit: int = 12
) -> list[ModeIndex]:
    """First `limit` basis modes, dropping those invisible on the front line.

    Modes with even z index are antisymmetric about z = L/2, so their
    sensor column is identically zero and they can never carry feedback.
    """
    return [p.mode for p in basis[:limit] if p.mode.i % 2 == 1]


def _setpoints(profile: FrontProfile, params: ModelParams, sensors: SensorSpec):
    y_mid, _ = eval_front(profile, params.L / 2.0)
    return tuple(float(y_mid) for _ in sensors.r_positions)


def select_gain(
    system: SpectralSystem,
    M=None,
    *,
    k_range: tuple[float, float] = (-100.0, 0.0),
    n_points: int = 200,
) -> GainSelection:
    """Scan log-spaced negative gains, minimizing the spectral abscissa.

    Returns the best stabilizing gain together with the contiguous
    stability interval of the scan that contains it.
    """
    k_min, k_max = k_range
    if not (k_min < 0 and k_min < k_max <= 0):
        raise ValueError(f"gain range must satisfy k_min < k_max <= 0, got {k_range}")
    magnitudes = np.geomspace(abs(k_min) * 1e-4, abs(k_min), n_points)
    gains = -magnitudes[::-1]
    abscissas = np.array(
        [closed_loop_spectrum(system, k, M)[0].real for k in gains]
    )
    best = int(np.argmin(abscissas))
    if abscissas[best] >= 0:
        return GainSelection(False, None, None, None, gains, abscissas)
    lo = best
    while lo > 0 and abscissas[lo - 1] < 0:
        lo -= 1
    hi = best
    while hi + 1 < gains.size and abscissas[hi + 1] < 0:
        hi += 1
    return GainSelection(
        success=True,
        k=float(gains[best]),
        abscissa=float(abscissas[best]),
        stability_interval=(float(gains[lo]), float(gains[hi])),
        gains=gains,
        abscissas=abscissas,
    )


def verify_controller(system: SpectralSystem, spec: ControllerSpec) -> bool:
    """Re-verify every design certificate independently of the search."""
    zset = finite_zeros(system.A, system.beta, system.H)
    if zset.leading_zero is None or zset.leading_zero.real >= 0:
        return False
    if abs(zset.leading_zero - spec.leading_zero) > 1e-8 * max(
        1.0, abs(spec.leading_zero)
    ):
        return False
    if not infinite_zero_check(system.H, system.beta, spec.precompensator).passed:
        return False
    abscissa = closed_loop_spectrum(system, spec.gain, spec.precompensator)[0].real
    return bool(abscissa < 0)


def _finish_design(
    system: SpectralSystem,
    profile: FrontProfile,
    zset: ZeroSet,
    mixing: Precompensator | None,
    izc: InfiniteZeroCheck,
    k_range,
    gain_points,
    **extra,
) -> DesignOutcome:
    gain_sel = select_gain(system, mixing, k_range=k_range, n_points=gain_points)
    if not gain_sel.success:
        return DesignOutcome(
            False,
            None,
            zset.leading_zero,
            "no_stabilizing_gain",
            system=system,
            infinite_check=izc,
            gain_selection=gain_sel,
            **extra,
        )
    spec = ControllerSpec(
        sensors=system.sensors,
        actuators=system.actuators,
        gain=gain_sel.k,
        precompensator=mixing,
        leading_zero=zset.leading_zero,
        setpoints=_setpoints(profile, system.params, system.sensors),
        stability_interval=gain_sel.stability_interval,
    )
    if not verify_controller(system, spec):
        return DesignOutcome(
            False,
            None,
            zset.leading_zero,
            "verification_failed",
            system=system,
            infinite_check=izc,
            gain_selection=gain_sel,
            **extra,
        )
    return DesignOutcome(
        True,
        spec,
        zset.leading_zero,
        "ok",
        system=system,
        infinite_check=izc,
        gain_selection=gain_sel,
        **extra,
    )


def design_single_actuator(
    params: ModelParams,
    profile: FrontProfile,
    basis: Sequence[Eigenpair],
    r1: float,
    *,
    k_range: tuple[float, float] = (-100.0, 0.0),
    gain_points: int = 200,
    seed: int = 0,
    n_quad: int = 400,
) -> DesignOutcome:
    """Single space-independent actuator responding to one sensor at (L/2, r1).

    The actuator shape is fixed, so solvability is decided by the input
    decoupling zeros; the design succeeds when the leading finite zero is
    in the left half plane and the asymptote check on H*beta passes.
    """
    if not 0 < r1 < params.R:
        raise ValueError(f"sensor position {r1} outside (0, {params.R})")
    sensors = SensorSpec((r1,))
    actuators = (ActuatorSpec.constant(),)
    system = build_system(params, profile, sensors, actuators, basis=basis, n_quad=n_quad)

    zset = finite_zeros(system.A, system.beta, system.H)
    solvability = check_input_solvability(system, seed=seed)
    if not solvability.solvable:
        return DesignOutcome(
            False,
            None,
            zset.leading_zero,
            "input_decoupling_unstable",
            system=system,
            input_solvability=solvability,
        )
    if zset.leading_zero is None or zset.leading_zero.real >= 0:
        return DesignOutcome(
            False,
            None,
            zset.leading_zero,
            "leading_zero_nonnegative",
            system=system,
            input_solvability=solvability,
        )
    izc = infinite_zero_check(system.H, system.beta)
    if not izc.passed:
        return DesignOutcome(
            False,
            None,
            zset.leading_zero,
            "infinite_zero_check_failed",
            system=system,
            input_solvability=solvability,
            infinite_check=izc,
        )
    return _finish_design(
        system,
        profile,
        zset,
        None,
        izc,
        k_range,
        gain_points,
        input_solvability=solvability,
    )


def _mixing_candidates(eta: int, n_random: int, seed: int):
    """Identity, then sensor permutations, then random nonsingular draws."""
    yield None
    if eta == 2:
        yield Precompensator(_SWAP)
    elif eta > 2:
        for perm in itertools.permutations(range(eta)):
            if perm == tuple(range(eta)):
                continue
            yield Precompensator(np.eye(eta)[list(perm)])
    rng = np.random.default_rng(seed)
    for _ in range(n_random):
        M = rng.uniform(-1.0, 1.0, size=(eta, eta))
        try:
            yield Precompensator(M)
        except ValueError:
            continue


def search_actuators(
    params: ModelParams,
    profile: FrontProfile,
    basis: Sequence[Eigenpair],
    r_positions: Sequence[float],
    candidate_modes: Sequence[ModeIndex] | None = None,
    *,
    k_range: tuple[float, float] = (-100.0, 0.0),
    gain_points: int = 200,
    seed: int = 0,
    n_quad: int = 400,
    n_random_mixings: int = 50,
) -> DesignOutcome:
    """Actuator search with one constant actuator and eta-1 eigenmode actuators.

    Candidate eigenmodes are tried in eigenvalue order (tuples of them in
    lexicographic combination order for eta > 2).  The first candidate
    whose leading finite zero is strictly stable and whose H*beta is
    nonsingular wins; the precompensator is then escalated from identity
    through sensor permutations to random nonsingular mixings.
    """
    sensors = SensorSpec(tuple(r_positions))
    eta = sensors.eta
    if eta < 2:
        raise ValueError("the actuator search needs at least two sensors")
    if candidate_modes is None:
        candidate_modes = default_candidate_modes(basis)

    probe = build_system(
        params,
        profile,
        sensors,
        (ActuatorSpec.constant(),) * eta,
        basis=basis,
        n_quad=n_quad,
    )
    out_solv = check_output_solvability(probe, seed=seed)
    if not out_solv.solvable:
        return DesignOutcome(
            False,
            None,
            None,
            "output_decoupling_unstable",
            output_solvability=out_solv,
        )

    diagnostics = []
    for combo in itertools.combinations(candidate_modes, eta - 1):
        actuators = (ActuatorSpec.constant(),) + tuple(
            ActuatorSpec(mode) for mode in combo
        )
        beta = assemble_input_matrix(actuators, basis, params)
        system = SpectralSystem(
            params=params,
            N=probe.N,
            modes=probe.modes,
            A=probe.A,
            beta=beta,
            H=probe.H,
            J=probe.J,
            sensors=sensors,
            actuators=actuators,
        )
        izc_plain = infinite_zero_check(system.H, beta)
        if izc_plain.singular:
            diagnostics.append((combo, "singular_H_beta", None))
            continue
        zset = finite_zeros(system.A, beta, system.H)
        if zset.leading_zero is None or zset.leading_zero.real >= 0:
            diagnostics.append((combo, "leading_zero_nonnegative", zset.leading_zero))
            continue
        mixing = None
        izc = None
        for candidate_M in _mixing_candidates(eta, n_random_mixings, seed):
            izc = infinite_zero_check(system.H, beta, candidate_M)
            if izc.passed:
                mixing = candidate_M
                break
        if izc is None or not izc.passed:
            diagnostics.append((combo, "no_passing_precompensator", zset.leading_zero))
            continue
        outcome = _finish_design(
            system,
            profile,
            zset,
            mixing,
            izc,
            k_range,
            gain_points,
            output_solvability=out_solv,
            diagnostics=tuple(diagnostics),
        )
        if outcome.success:
            return outcome
        diagnostics.append((combo, outcome.reason, zset.leading_zero))

    return DesignOutcome(
        False,
        None,
        None,
        "candidates_exhausted; shift the sensor positions and search again",
        output_solvability=out_solv,
        diagnostics=tuple(diagnostics),
    )


def search_two_actuator(
    params: ModelParams,
    profile: FrontProfile,
    basis: Sequence[Eigenpair],
    r1: float,
    r2: float,
    candidate_modes: Sequence[ModeIndex] | None = None,
    **kwargs,
) -> DesignOutcome:
    """Two-channel search: constant actuator plus one eigenmode actuator."""
    if r1 == r2:
        raise ValueError("sensor positions must differ")
    return search_actuators(
        params, profile, basis, (r1, r2), candidate_modes, **kwargs
    )

"""System zeros, decoupling zeros, and root-locus analysis.

Finite (invariant) zeros of a square system (A, B, H) are the finite
generalized eigenvalues of the Rosenbrock pencil

    [[A, B], [H, 0]]  -  s * diag(I, 0),

i.e. the values where the system matrix [[sI - A, -B], [H, 0]] loses rank.
They are the limits of the closed-loop eigenvalue branches that stay
finite as the output-feedback gain grows without bound; the remaining
branches escape to infinity along directions set by the eigenvalues of
(M)H*B.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.optimize import linear_sum_assignment

from .errors import NumericalError

__all__ = [
    "ZeroSet",
    "Precompensator",
    "InfiniteZeroCheck",
    "RootLocusTrace",
    "finite_zeros",
    "input_decoupling_zeros",
    "output_decoupling_zeros",
    "infinite_zero_check",
    "closed_loop_matrix",
    "closed_loop_spectrum",
    "root_locus",
]


def _sorted_descending(values: np.ndarray) -> np.ndarray:
    """Sort complex values by descending real part, then descending imag."""
    values = np.asarray(values, dtype=complex)
    order = np.lexsort((-values.imag, -values.real))
    return values[order]


@dataclass(frozen=True)
class ZeroSet:
    """Finite zeros of one system, ordered leading-first."""

    finite_zeros: np.ndarray
    leading_zero: complex | None
    count: int


@dataclass(frozen=True)
class Precompensator:
    """Static nonsingular output mixing applied before the gain."""

    M: np.ndarray

    def __post_init__(self) -> None:
        M = np.asarray(self.M, dtype=float)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValueError(f"precompensator must be square, got shape {M.shape}")
        if _is_singular(M):
            raise ValueError("precompensator must be nonsingular")
        object.__setattr__(self, "M", M)


@dataclass(frozen=True)
class InfiniteZeroCheck:
    """Result of the infinite-zero asymptote test on (M)H*B."""

    passed: bool
    eigenvalues: np.ndarray
    det: float
    singular: bool


@dataclass(frozen=True)
class RootLocusTrace:
    """Closed-loop spectra over a gain grid with branches matched."""

    gains: np.ndarray
    branches: np.ndarray          # (n_gains, state_dim) complex
    ambiguous: np.ndarray         # per-step flag: two branches closer than tol

    @property
    def n_branches(self) -> int:
        return self.branches.shape[1]


def _coerce_mixing(M) -> np.ndarray | None:
    if M is None:
        return None
    return np.asarray(getattr(M, "M", M), dtype=float)


def _is_singular(X: np.ndarray, rtol: float = 1e-12) -> bool:
    """Determinant test scaled by the Hadamard bound of the columns."""
    det = np.linalg.det(X)
    col_norms = np.linalg.norm(X, axis=0)
    bound = np.prod(np.maximum(col_norms, 1e-300))
    return bool(abs(det) <= rtol * bound)


def finite_zeros(A, B, H, *, inf_threshold: float = 1e8) -> ZeroSet:
    """Finite zeros of the square system (A, B, H) via the pencil method.

    Generalized eigenvalues at infinity (solver-flagged or of magnitude
    above inf_threshold) are discarded.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    H = np.atleast_2d(np.asarray(H, dtype=float))
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError(f"A must be square, got {A.shape}")
    if B.shape[0] != n or H.shape[1] != n:
        raise ValueError("B/H dimensions are inconsistent with A")
    if B.shape[1] != H.shape[0]:
        raise ValueError(
            "zero analysis requires equally many inputs and outputs, "
            f"got {B.shape[1]} inputs and {H.shape[0]} outputs"
        )
    eta = B.shape[1]

    F = np.block([[A, B], [H, np.zeros((eta, eta))]])
    E = np.zeros_like(F)
    E[:n, :n] = np.eye(n)
    try:
        alpha, beta = scipy.linalg.eig(F, E, right=False, homogeneous_eigvals=True)
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover
        raise NumericalError(f"generalized eigenvalue solver failed: {exc}") from exc

    scale = max(1.0, np.linalg.norm(F))
    indeterminate = (np.abs(alpha) <= 1e-12 * scale) & (np.abs(beta) <= 1e-12)
    if np.any(indeterminate):
        raise NumericalError(
            "singular Rosenbrock pencil: the zero structure is degenerate "
            "(identically singular transfer matrix)"
        )
    with np.errstate(divide="ignore", invalid="ignore"):
        values = alpha / beta
    finite = values[np.isfinite(values) & (np.abs(values) < inf_threshold)]
    finite = _sorted_descending(finite)
    leading = complex(finite[0]) if finite.size else None
    return ZeroSet(finite_zeros=finite, leading_zero=leading, count=finite.size)


def input_decoupling_zeros(
    A,
    B,
    *,
    seed: int = 0,
    n_draws: int = 3,
    match_tol: float = 1e-6,
    rank_rtol: float = 1e-8,
) -> np.ndarray:
    """Uncontrollable eigenvalues of (A, B).

    Eigenvalues of A + B*K that stay fixed (within match_tol) across
    n_draws independent random gain matrices are taken as candidates;
    each candidate is then confirmed by a rank test on [sI - A, -B].
    A candidate that passes the invariance test but fails the rank test
    is a disagreement between the two methods and raises NumericalError.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    n = A.shape[0]
    m = B.shape[1]
    if n_draws < 3:
        raise ValueError("the invariance test needs at least 3 gain draws")
    rng = np.random.default_rng(seed)
    spectra = [
        np.linalg.eigvals(A + B @ rng.uniform(-1.0, 1.0, size=(m, n)))
        for _ in range(n_draws)
    ]

    scale = max(1.0, np.linalg.norm(np.hstack([A, B])))
    eye = np.eye(n)
    zeros = []
    for s in spectra[0]:
        if not all(np.min(np.abs(sp - s)) <= match_tol for sp in spectra[1:]):
            continue
        sigma_min = scipy.linalg.svdvals(np.hstack([s * eye - A, -B]))[-1]
        if sigma_min > rank_rtol * scale:
            raise NumericalError(
                f"decoupling-zero methods disagree at s={s:.6g}: invariant under "
                f"random feedback but smallest singular value of the rank test "
                f"is {sigma_min:.3e}"
            )
        zeros.append(s)
    return _sorted_descending(np.array(zeros, dtype=complex))


def output_decoupling_zeros(A, H, **kwargs) -> np.ndarray:
    """Unobservable eigenvalues of (A, H): the dual rank test on (A^T, H^T)."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    H = np.atleast_2d(np.asarray(H, dtype=float))
    return input_decoupling_zeros(A.T, H.T, **kwargs)


def infinite_zero_check(H, beta, M=None, *, det_rtol: float = 1e-12) -> InfiniteZeroCheck:
    """Check that all infinite-zero branches point into the left half plane.

    For gain k < 0 that requires (M)H*beta to be nonsingular with all
    eigenvalues of positive real part.
    """
    H = np.atleast_2d(np.asarray(H, dtype=float))
    beta = np.atleast_2d(np.asarray(beta, dtype=float))
    X = H @ beta
    if X.shape[0] != X.shape[1]:
        raise ValueError(f"H*beta must be square, got {X.shape}")
    mixing = _coerce_mixing(M)
    if mixing is not None:
        X = mixing @ X
    singular = _is_singular(X, det_rtol)
    eigenvalues = _sorted_descending(np.linalg.eigvals(X))
    passed = (not singular) and bool(np.all(eigenvalues.real > 0))
    return InfiniteZeroCheck(
        passed=passed,
        eigenvalues=eigenvalues,
        det=float(np.linalg.det(X)),
        singular=singular,
    )


def closed_loop_matrix(A, B, H, k: float, M=None) -> np.ndarray:
    """A + k * B (M) H for static output feedback v = k (M) w."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    H = np.atleast_2d(np.asarray(H, dtype=float))
    mixing = _coerce_mixing(M)
    gain_path = B @ H if mixing is None else B @ mixing @ H
    return A + k * gain_path


def closed_loop_spectrum(system, k: float, M=None) -> np.ndarray:
    """Eigenvalues of the closed loop at gain k, ordered leading-first."""
    if not np.isfinite(k):
        raise ValueError("gain must be finite")
    w = np.linalg.eigvals(closed_loop_matrix(system.A, system.beta, system.H, k, M))
    return _sorted_descending(w)


def root_locus(system, k_grid, M=None, *, ambiguity_tol: float = 1e-10) -> RootLocusTrace:
    """Closed-loop spectra over k_grid with branches matched between steps.

    Branches are paired between consecutive gains by minimum-distance
    assignment.  Steps where two eigenvalues of the new spectrum are
    closer than ambiguity_tol are flagged as ambiguous, not resolved.
    """
    ks = np.asarray(k_grid, dtype=float)
    if ks.ndim != 1 or ks.size < 2:
        raise ValueError("k_grid must be a 1-D grid with at least two gains")
    if np.any(np.diff(ks) <= 0):
        raise ValueError("k_grid must be strictly increasing")
    if not np.any(ks == 0.0):
        raise ValueError("k_grid must include 0 (the open loop)")

    n = system.A.shape[0]
    branches = np.empty((ks.size, n), dtype=complex)
    ambiguous = np.zeros(ks.size, dtype=bool)
    branches[0] = closed_loop_spectrum(system, ks[0], M)
    for t in range(1, ks.size):
        w = closed_loop_spectrum(system, ks[t], M)
        dists = np.abs(w[None, :] - w[:, None])
        dists[np.diag_indices(n)] = np.inf
        if np.min(dists) < ambiguity_tol:
            ambiguous[t] = True
        cost = np.abs(branches[t - 1][:, None] - w[None, :])
        _, cols = linear_sum_assignment(cost)
        branches[t] = w[cols]
    return RootLocusTrace(gains=ks, branches=branches, ambiguous=ambiguous)

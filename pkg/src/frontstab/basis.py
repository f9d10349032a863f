"""Neumann-Laplacian eigenbasis of the rectangle [0, L] x [0, R].

Eigenfunctions are products of cosines with zero normal derivative on all
four edges,

    phi_{ij}(z, r) = (rho / sqrt(L*R)) * cos((i-1)*pi*z/L) * cos((j-1)*pi*r/R),

orthonormal over the rectangle, with eigenvalues

    lambda_{ij} = pi**2 * ((i-1)**2 / L**2 + (j-1)**2 / R**2).

The basis is ordered by ascending eigenvalue; ties are broken
lexicographically in (i, j).  The 1-based position of a pair in the ordered
list is its flattened index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .model import ModelParams

__all__ = [
    "ModeIndex",
    "Eigenpair",
    "mode_eigenvalue",
    "mode_normalization",
    "make_eigenpair",
    "enumerate_basis",
    "eval_eigenfunction",
    "find_mode",
]

_MAX_BASIS_SIZE = 100_000


class ModeIndex(NamedTuple):
    i: int  # z mode number, >= 1
    j: int  # r mode number, >= 1


@dataclass(frozen=True)
class Eigenpair:
    """One basis mode: index pair, eigenvalue, and normalization constant."""

    mode: ModeIndex
    eigenvalue: float
    rho: float


def mode_eigenvalue(mode: ModeIndex, params: ModelParams) -> float:
    i, j = mode
    return math.pi**2 * ((i - 1) ** 2 / params.L**2 + (j - 1) ** 2 / params.R**2)


def mode_normalization(mode: ModeIndex) -> float:
    """rho = 1 for the constant mode, sqrt(2) per nontrivial direction."""
    i, j = mode
    rho = 1.0
    if i > 1:
        rho *= math.sqrt(2.0)
    if j > 1:
        rho *= math.sqrt(2.0)
    return rho


def make_eigenpair(mode, params: ModelParams) -> Eigenpair:
    mode = ModeIndex(*mode)
    if mode.i < 1 or mode.j < 1:
        raise ValueError(f"mode indices must be >= 1, got {tuple(mode)}")
    return Eigenpair(mode, mode_eigenvalue(mode, params), mode_normalization(mode))


def enumerate_basis(params: ModelParams, N: int) -> list[Eigenpair]:
    """Return the N eigenpairs of smallest eigenvalue, ascending.

    The scan rectangle over (i, j) is enlarged automatically until no
    omitted mode could have an eigenvalue at or below the N-th kept one.
    """
    if N < 1:
        raise ValueError(f"basis size must be >= 1, got {N}")
    if N > _MAX_BASIS_SIZE:
        raise ValueError(f"basis size {N} exceeds the supported bound {_MAX_BASIS_SIZE}")

    imax = jmax = max(4, math.isqrt(N) + 2)
    while True:
        cand = [
            (mode_eigenvalue(ModeIndex(i, j), params), i, j)
            for i in range(1, imax + 1)
            for j in range(1, jmax + 1)
        ]
        cand.sort()
        if len(cand) >= N:
            cutoff = cand[N - 1][0]
            # Any mode outside the rectangle dominates one of these two.
            boundary = min(
                mode_eigenvalue(ModeIndex(imax + 1, 1), params),
                mode_eigenvalue(ModeIndex(1, jmax + 1), params),
            )
            if boundary > cutoff:
                break
        imax = jmax = 2 * imax
        if imax > _MAX_BASIS_SIZE:
            raise ValueError(f"basis enumeration failed to close for N={N}")

    return [make_eigenpair(ModeIndex(i, j), params) for _, i, j in cand[:N]]


def eval_eigenfunction(pair: Eigenpair, params: ModelParams, z, r):
    """Evaluate the basis function at (z, r); accepts scalars or arrays."""
    z = np.asarray(z, dtype=float)
    r = np.asarray(r, dtype=float)
    if np.any(z < 0) or np.any(z > params.L):
        raise ValueError(f"z coordinates must lie in [0, {params.L}]")
    if np.any(r < 0) or np.any(r > params.R):
        raise ValueError(f"r coordinates must lie in [0, {params.R}]")
    i, j = pair.mode
    value = (
        pair.rho
        / math.sqrt(params.L * params.R)
        * np.cos((i - 1) * math.pi * z / params.L)
        * np.cos((j - 1) * math.pi * r / params.R)
    )
    return value


def find_mode(basis: Sequence[Eigenpair], mode) -> int:
    """Position of (i, j) in the ordered basis; raises if not present."""
    target = ModeIndex(*mode)
    for e, pair in enumerate(basis):
        if pair.mode == target:
            return e
    raise ValueError(f"mode {tuple(target)} is not in the truncated basis")

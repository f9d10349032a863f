"""Model constants and reaction kinetics of the two-variable bistable system.

The activator y and inhibitor theta evolve under

    y_t = y_zz + y_rr + P(y, theta) + control_signal
    theta_t = epsilon * Q(y, theta)

with cubic bistable kinetics P and linear inhibitor kinetics Q.  All
quantities are dimensionless.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["ModelParams", "eval_P", "eval_Q", "eval_dPdy"]


@dataclass(frozen=True)
class ModelParams:
    """Geometry and kinetics constants.

    L, R    : domain length (z direction) and width (r direction)
    gamma   : inhibitor coupling; gamma < 1 is required for a bistable front
    epsilon : inhibitor/activator time-scale ratio
    """

    L: float
    R: float
    gamma: float
    epsilon: float

    def __post_init__(self) -> None:
        if not self.L > 0:
            raise ValueError(f"L must be positive, got {self.L}")
        if not self.R > 0:
            raise ValueError(f"R must be positive, got {self.R}")
        if not 0 < self.gamma < 1:
            raise ValueError(
                f"gamma must lie in (0, 1) for a bistable front, got {self.gamma}"
            )
        if not 0 < self.epsilon < 1:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")


def eval_P(y, theta):
    """Activator source  P(y, theta) = -y**3 + y + theta."""
    return -(y**3) + y + theta


def eval_Q(y, theta, gamma):
    """Inhibitor source  Q(y, theta) = -gamma*y - theta."""
    return -gamma * y - theta


def eval_dPdy(y):
    """Partial derivative of P with respect to y:  -3*y**2 + 1."""
    return -3.0 * y**2 + 1.0

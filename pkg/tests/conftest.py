import numpy as np
import pytest

from frontstab import ModelParams, solve_front
from frontstab.basis import enumerate_basis
from frontstab.galerkin import ActuatorSpec, SensorSpec, build_system


def reference_params(R: float = 8.0) -> ModelParams:
    return ModelParams(L=20.0, R=R, gamma=0.45, epsilon=0.1)


@pytest.fixture(scope="session")
def front_profile():
    """Stationary front for the reference length/kinetics (R-independent)."""
    return solve_front(reference_params(), 401)


class SystemCache:
    """Build-once cache for assembled systems shared across tests."""

    def __init__(self, profile):
        self.profile = profile
        self._store = {}

    def get(self, R, sensors, actuators, N=23):
        key = (round(R, 10), tuple(sensors), tuple(actuators), N)
        if key not in self._store:
            params = reference_params(R)
            basis = enumerate_basis(params, N)
            self._store[key] = build_system(
                params,
                self.profile,
                SensorSpec(sensors),
                tuple(actuators),
                basis=basis,
            )
        return self._store[key]

    def siso(self, R, N=23):
        return self.get(R, (R / 2.0,), (ActuatorSpec.constant(),), N)

    def two_channel(self, R, N=23):
        return self.get(
            R,
            (2.0 * R / 3.0, R / 3.0),
            (ActuatorSpec.constant(), ActuatorSpec.eigenmode(1, 2)),
            N,
        )


@pytest.fixture(scope="session")
def systems(front_profile):
    return SystemCache(front_profile)


def match_complex_sets(a, b, tol):
    """Symmetric nearest-neighbor match of two complex multisets."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.size != b.size:
        return False
    if a.size == 0:
        return True
    ok_ab = all(np.min(np.abs(b - v)) <= tol * max(1.0, abs(v)) for v in a)
    ok_ba = all(np.min(np.abs(a - v)) <= tol * max(1.0, abs(v)) for v in b)
    return ok_ab and ok_ba


def polynomial_zero_oracle(A, B, C):
    """Transfer-function zeros by determinant interpolation.

    Samples det [[sI - A, -B], [C, 0]] on a circle, recovers the
    polynomial coefficients by inverse DFT, and takes its roots.  Valid
    for square systems with nonsingular C @ B (degree n - eta); fully
    independent of any eigenvalue solver.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    C = np.asarray(C, dtype=float)
    n = A.shape[0]
    eta = B.shape[1]
    deg = n - eta
    radius = max(1.0, 2.0 * np.linalg.norm(A, 2))
    pts = radius * np.exp(2j * np.pi * np.arange(deg + 1) / (deg + 1))
    corner = np.zeros((eta, eta))
    vals = np.array(
        [
            np.linalg.det(np.block([[s * np.eye(n) - A, -B], [C, corner]]))
            for s in pts
        ]
    )
    # c_k rho^k is the forward DFT of the samples over the circle
    coeffs = np.fft.fft(vals) / (deg + 1) / radius ** np.arange(deg + 1)
    assert np.max(np.abs(coeffs.imag)) < 1e-6 * max(1.0, np.max(np.abs(coeffs)))
    return np.roots(coeffs.real[::-1])


def draw_minimal_system(rng, n, eta):
    """Random square system with well-conditioned C @ B (relative degree 1)."""
    while True:
        A = rng.normal(size=(n, n))
        B = rng.normal(size=(n, eta))
        C = rng.normal(size=(eta, n))
        if abs(np.linalg.det(C @ B)) > 0.3:
            return A, B, C

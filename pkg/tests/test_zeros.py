import numpy as np
import pytest

from frontstab.errors import NumericalError
from frontstab.zeros import (
    Precompensator,
    closed_loop_matrix,
    closed_loop_spectrum,
    finite_zeros,
    infinite_zero_check,
    input_decoupling_zeros,
    output_decoupling_zeros,
    root_locus,
)

from conftest import draw_minimal_system, match_complex_sets, polynomial_zero_oracle

SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])


class TestFiniteZeros:
    def test_companion_pair_has_zero_at_minus_one(self):
        A = np.array([[0.0, 1.0], [-2.0, -3.0]])
        B = np.array([[0.0], [1.0]])
        H = np.array([[1.0, 1.0]])
        zset = finite_zeros(A, B, H)
        assert zset.count == 1
        assert zset.leading_zero == pytest.approx(-1.0, abs=1e-10)

    def test_unobservable_mode_is_an_invariant_zero(self):
        # The determinant of the system matrix is s + 2: the unobservable
        # mode at -2 shows up as an invariant zero even though the minimal
        # transfer function 1/(s+1) has no zeros.
        A = np.diag([-1.0, -2.0])
        B = np.array([[1.0], [1.0]])
        H = np.array([[1.0, 0.0]])
        oracle = polynomial_zero_oracle(A, B, H)
        np.testing.assert_allclose(oracle, [-2.0], atol=1e-10)
        zset = finite_zeros(A, B, H)
        assert zset.count == 1
        assert zset.leading_zero == pytest.approx(-2.0, abs=1e-9)

    def test_matches_determinant_oracle_on_random_systems(self):
        rng = np.random.default_rng(42)
        for _ in range(8):
            n = int(rng.integers(3, 9))
            eta = int(rng.integers(1, 3))
            A, B, C = draw_minimal_system(rng, n, eta)
            expected = polynomial_zero_oracle(A, B, C)
            got = finite_zeros(A, B, C).finite_zeros
            assert match_complex_sets(expected, got, 1e-7)

    def test_output_mixing_leaves_zeros_unchanged(self):
        rng = np.random.default_rng(3)
        A, B, C = draw_minimal_system(rng, 7, 2)
        base = finite_zeros(A, B, C).finite_zeros
        M = np.array([[2.0, -1.0], [0.5, 1.5]])
        mixed = finite_zeros(A, B, M @ C).finite_zeros
        assert match_complex_sets(base, mixed, 1e-8)

    def test_conjugate_pairing(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            A, B, C = draw_minimal_system(rng, 8, 2)
            zs = finite_zeros(A, B, C).finite_zeros
            assert match_complex_sets(zs, np.conj(zs), 1e-8)

    def test_non_square_rejected(self):
        A = np.eye(3)
        with pytest.raises(ValueError, match="inputs and .* outputs"):
            finite_zeros(A, np.ones((3, 2)), np.ones((1, 3)))

    def test_singular_pencil_reported(self):
        A = np.diag([-1.0, -2.0])
        with pytest.raises(NumericalError, match="singular"):
            finite_zeros(A, np.zeros((2, 1)), np.array([[1.0, 0.0]]))

    def test_high_gain_limit_agrees_on_spectral_system(self, systems):
        system = systems.two_channel(8.0)
        zs = finite_zeros(system.A, system.beta, system.H).finite_zeros
        w = np.linalg.eigvals(
            closed_loop_matrix(system.A, system.beta, system.H, -1e8, SWAP)
        )
        branches = w[np.abs(w) < 1e6]
        assert branches.size == zs.size == 2 * 23 - 2
        assert match_complex_sets(zs, branches, 1e-4)

    def test_leading_zero_ordering(self):
        A = np.diag([-1.0, -2.0, -3.0, -4.0])
        B = np.eye(4)[:, :1]
        # zeros of 1/(s+1) cascaded products: use a system with known zeros
        H = np.array([[1.0, 1.0, 1.0, 1.0]])
        zset = finite_zeros(A, B, H)
        assert zset.leading_zero == max(zset.finite_zeros, key=lambda s: (s.real, s.imag))


class TestDecouplingZeros:
    def test_undriven_mode_detected(self):
        A = np.diag([1.0, -2.0])
        B = np.array([[1.0], [0.0]])
        zs = input_decoupling_zeros(A, B)
        np.testing.assert_allclose(zs, [-2.0], atol=1e-8)

    def test_companion_pair_is_controllable(self):
        A = np.array([[0.0, 1.0], [-2.0, -3.0]])
        B = np.array([[0.0], [1.0]])
        assert input_decoupling_zeros(A, B).size == 0

    def test_invariant_under_additional_feedback(self):
        rng = np.random.default_rng(5)
        Q, _ = np.linalg.qr(rng.normal(size=(5, 5)))
        A = Q @ np.diag([0.7, -0.3, -1.0, -2.0, -3.0]) @ Q.T
        B = Q @ np.array([[1.0], [1.0], [1.0], [0.0], [0.0]])
        zs = input_decoupling_zeros(A, B, seed=1)
        np.testing.assert_allclose(np.sort(zs.real), [-3.0, -2.0], atol=1e-7)
        K = rng.uniform(-1.0, 1.0, (1, 5))
        moved = np.linalg.eigvals(A + B @ K)
        for s in zs:
            assert np.min(np.abs(moved - s)) <= 1e-6

    def test_output_duality(self):
        A = np.diag([1.0, -2.0])
        H = np.array([[1.0, 0.0]])
        zs = output_decoupling_zeros(A, H)
        np.testing.assert_allclose(zs, [-2.0], atol=1e-8)
        dual = input_decoupling_zeros(A.T, H.T)
        np.testing.assert_allclose(np.sort(zs.real), np.sort(dual.real), atol=1e-12)

    def test_fully_observable_pair_empty(self):
        A = np.array([[0.0, 1.0], [-2.0, -3.0]])
        H = np.array([[1.0, 0.0]])
        assert output_decoupling_zeros(A, H).size == 0

    def test_method_disagreement_raises(self):
        # weakly coupled mode: invariant under unit-scale feedback but
        # visibly coupled for the rank test
        A = np.diag([0.5, -1.5])
        B = np.array([[1e-7], [1.0]])
        with pytest.raises(NumericalError, match="disagree"):
            input_decoupling_zeros(A, B, seed=0)


class TestInfiniteZeroCheck:
    def test_identity_passes(self):
        check = infinite_zero_check(np.eye(2), np.eye(2))
        assert check.passed and not check.singular

    def test_swap_matrix_fails_until_precompensated(self):
        H = np.eye(2)
        beta = SWAP
        plain = infinite_zero_check(H, beta)
        assert not plain.passed
        np.testing.assert_allclose(np.sort(plain.eigenvalues.real), [-1.0, 1.0])
        fixed = infinite_zero_check(H, beta, SWAP)
        assert fixed.passed
        np.testing.assert_allclose(fixed.eigenvalues, [1.0, 1.0])

    def test_negative_scalar_fails(self):
        check = infinite_zero_check(np.array([[1.0]]), np.array([[-0.3]]))
        assert not check.passed and not check.singular

    def test_singular_flagged(self):
        H = np.array([[1.0, 0.0], [1.0, 0.0]])
        beta = np.eye(2)
        check = infinite_zero_check(H, beta)
        assert not check.passed and check.singular

    def test_precompensator_validation(self):
        with pytest.raises(ValueError):
            Precompensator(np.array([[1.0, 1.0], [1.0, 1.0]]))
        with pytest.raises(ValueError):
            Precompensator(np.ones((2, 3)))


class _Sys:
    def __init__(self, A, beta, H):
        self.A, self.beta, self.H = A, beta, H


class TestClosedLoop:
    def _system(self, seed=9, n=6, eta=2):
        rng = np.random.default_rng(seed)
        A, B, C = draw_minimal_system(rng, n, eta)
        return _Sys(A, B, C)

    def test_zero_gain_is_open_loop(self):
        system = self._system()
        w = closed_loop_spectrum(system, 0.0)
        expected = np.linalg.eigvals(system.A)
        assert match_complex_sets(w, expected, 1e-12)

    def test_high_gain_branches_approach_zeros(self):
        system = self._system()
        zs = finite_zeros(system.A, system.beta, system.H).finite_zeros
        w = closed_loop_spectrum(system, -1e6)
        finite_branches = w[np.abs(w) < 1e4]
        assert finite_branches.size == zs.size
        assert match_complex_sets(zs, finite_branches, 1e-3)

    def test_mixing_scaling_equivalence(self):
        system = self._system()
        c = 3.7
        M = np.array([[0.4, 1.1], [-0.2, 0.9]])
        w1 = closed_loop_spectrum(system, -2.0, c * M)
        w2 = closed_loop_spectrum(system, -2.0 * c, M)
        assert match_complex_sets(w1, w2, 1e-10)

    def test_gain_must_be_finite(self):
        with pytest.raises(ValueError):
            closed_loop_spectrum(self._system(), np.inf)

    def test_closed_loop_matrix_wiring(self):
        A = np.zeros((2, 2))
        B = np.array([[1.0], [0.0]])
        H = np.array([[0.0, 1.0]])
        M = np.array([[2.0]])
        np.testing.assert_array_equal(
            closed_loop_matrix(A, B, H, -3.0, M), [[0.0, -6.0], [0.0, 0.0]]
        )


class TestRootLocus:
    def _system(self):
        rng = np.random.default_rng(21)
        A, B, C = draw_minimal_system(rng, 5, 1)
        return _Sys(A, B, C)

    def _grid(self, kmin=-1e5, n=40):
        return np.append(-np.geomspace(abs(kmin), 1e-3, n), 0.0)

    def test_trace_ends_at_open_loop(self):
        system = self._system()
        trace = root_locus(system, self._grid())
        assert trace.gains[-1] == 0.0
        assert match_complex_sets(
            trace.branches[-1], np.linalg.eigvals(system.A), 1e-10
        )

    def test_finite_branches_converge_to_zeros(self):
        system = self._system()
        zs = finite_zeros(system.A, system.beta, system.H).finite_zeros
        trace = root_locus(system, self._grid())
        # most negative gain is the first grid point
        w = trace.branches[0]
        finite_branches = w[np.abs(w) < 1e3]
        assert match_complex_sets(zs, finite_branches, 1e-3)

    def test_divergent_branch_grows_monotonically(self):
        system = self._system()
        trace = root_locus(system, self._grid())
        mags = np.abs(trace.branches)
        divergent = int(np.argmax(mags[0]))
        path = mags[::-1, divergent]  # from k=0 towards k=-inf
        tail = path[-12:]
        assert np.all(np.diff(tail) > 0)

    def test_degenerate_spectrum_flagged_ambiguous(self):
        # defective closed loop: the double eigenvalue never separates
        system = _Sys(
            np.diag([-1.0, -1.0]), np.array([[1.0], [0.0]]), np.array([[0.0, 1.0]])
        )
        trace = root_locus(system, np.array([-1.0, -0.5, 0.0]))
        assert trace.ambiguous[1:].all()

    def test_grid_validation(self):
        system = self._system()
        with pytest.raises(ValueError, match="include 0"):
            root_locus(system, np.array([-2.0, -1.0]))
        with pytest.raises(ValueError, match="increasing"):
            root_locus(system, np.array([0.0, -1.0]))

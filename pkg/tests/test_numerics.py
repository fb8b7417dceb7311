import numpy as np
import pytest

from chiralring import numerics
from chiralring.errors import (ConvergenceError, DegenerateNullSpaceError,
                               ResourceLimitError)

from conftest import rng


class TestKron:
    def test_identity_pair(self):
        assert np.array_equal(numerics.kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_diag_with_identity(self):
        out = numerics.kron(np.diag([1.0, 2.0]), np.eye(2))
        assert np.array_equal(out, np.diag([1.0, 1.0, 2.0, 2.0]))

    def test_lowering_operator_expansion(self):
        # hand-expanded a x I for a two-level lowering operator
        a = np.array([[0.0, 1.0], [0.0, 0.0]])
        expected = np.array([
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [0, 0, 0, 0],
            [0, 0, 0, 0],
        ], dtype=complex)
        assert np.array_equal(numerics.kron(a, np.eye(2)), expected)

    def test_associativity(self):
        r = rng(1)
        for _ in range(20):
            a, b, c = (r.standard_normal((2, 2)) + 1j * r.standard_normal((2, 2))
                       for _ in range(3))
            left = numerics.kron(numerics.kron(a, b), c)
            right = numerics.kron(a, numerics.kron(b, c))
            assert np.abs(left - right).max() < 1e-13

    def test_size_guard(self):
        big = np.zeros((3000, 3000))
        with pytest.raises(ResourceLimitError):
            numerics.kron(big, np.eye(2))

    def test_rejects_nan(self):
        bad = np.array([[np.nan, 0.0], [0.0, 1.0]])
        with pytest.raises(ValueError):
            numerics.kron(bad, np.eye(2))


class TestNullspace:
    def test_diagonal(self):
        vec = numerics.nullspace_vector(np.diag([0.0, 1.0, 2.0]))
        assert np.allclose(vec, [1.0, 0.0, 0.0], atol=1e-12)

    def test_zero_matrix_degenerate(self):
        with pytest.raises(DegenerateNullSpaceError):
            numerics.nullspace_vector(np.zeros((2, 2)))

    def test_two_null_directions_degenerate(self):
        with pytest.raises(DegenerateNullSpaceError):
            numerics.nullspace_vector(np.diag([0.0, 0.0, 3.0]))

    def test_planted_null_vector(self):
        r = rng(2)
        n = 12
        basis = r.standard_normal((n, n)) + 1j * r.standard_normal((n, n))
        basis += n * np.eye(n)  # keep it comfortably invertible
        spectrum = np.concatenate(([0.0], np.linspace(1.0, 3.0, n - 1)))
        matrix = basis @ np.diag(spectrum) @ np.linalg.inv(basis)
        truth = basis[:, 0] / np.linalg.norm(basis[:, 0])
        vec = numerics.nullspace_vector(matrix, rel_tol=1e-9)
        overlap = abs(np.vdot(vec, truth))
        assert 1.0 - overlap < 1e-9

    def test_no_null_space(self):
        with pytest.raises(ConvergenceError):
            numerics.nullspace_vector(np.eye(3))


def test_eigendecomposition_residual_large():
    r = rng(3)
    n = 1024
    raw = r.standard_normal((n, n)) + 1j * r.standard_normal((n, n))
    matrix = (raw + raw.conj().T) / 2.0
    values, vectors = numerics.hermitian_eigensystem(matrix)
    residual = np.linalg.norm(matrix @ vectors - vectors * values, axis=0)
    assert residual.max() < 1e-10 * np.linalg.norm(matrix)


def test_spectral_norm_matches_dense():
    r = rng(4)
    matrix = r.standard_normal((50, 50)) + 1j * r.standard_normal((50, 50))
    exact = np.linalg.norm(matrix, 2)
    estimate = numerics.spectral_norm(matrix, iterations=60)
    assert 0.95 * exact <= estimate <= exact * (1.0 + 1e-9)


class TestRk4:
    def test_constant(self):
        out = numerics.rk4_evolve(lambda x: 0.0 * x,
                                  np.array([1.0 + 0.0j]), 2.0, 0.1)
        assert out[0] == 1.0

    def test_exponential_decay(self):
        out = numerics.rk4_evolve(lambda x: -x, np.array([1.0 + 0.0j]),
                                  1.0, 1e-3)
        assert abs(out[0] - np.exp(-1.0)) < 1e-8

    def test_rotation_preserves_modulus(self):
        omega = 2.3
        out = numerics.rk4_evolve(lambda x: 1j * omega * x,
                                  np.array([1.0 + 0.0j]), 3.0, 1e-3)
        assert abs(abs(out[0]) - 1.0) < 1e-8

    def test_fourth_order_convergence(self):
        def error(step):
            out = numerics.rk4_evolve(lambda x: -x, np.array([1.0 + 0.0j]),
                                      1.0, step)
            return abs(out[0] - np.exp(-1.0))

        assert error(0.1) / error(0.05) >= 14.0

    def test_nan_abort(self):
        def blow_up(x):
            return x * np.inf

        with np.errstate(invalid="ignore"), pytest.raises(ValueError):
            numerics.rk4_evolve(blow_up, np.array([1.0 + 0.0j]), 1.0, 0.1)

    def test_bad_step(self):
        with pytest.raises(ValueError):
            numerics.rk4_evolve(lambda x: -x, np.array([1.0 + 0.0j]), 1.0, 0.0)

"""Dense complex linear-algebra and integration kernels.

Thin, validated wrappers around numpy's dense routines plus a classic
fixed-step RK4 integrator.  All kernels operate on plain complex ndarrays
and reject non-finite data.  Dense storage only; the size guard keeps
every product inside desk-scale memory.
"""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceError, DegenerateNullSpaceError, ResourceLimitError

# Largest dense matrix any kernel will produce (4096 x 4096 complex).
MAX_DENSE_ELEMENTS = 4096 * 4096


def require_finite(array: np.ndarray, name: str = "array") -> np.ndarray:
    """Raise ValueError if ``array`` holds NaN or Inf; return it unchanged."""
    if not np.all(np.isfinite(array)):
        raise ValueError(f"{name} contains non-finite entries")
    return array


def as_complex_matrix(array, name: str = "matrix") -> np.ndarray:
    """Coerce to a finite 2-D complex ndarray."""
    out = np.asarray(array, dtype=complex)
    if out.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {out.shape}")
    return require_finite(out, name)


def kron(a, b) -> np.ndarray:
    """Kronecker product with a dense-size guard."""
    a = as_complex_matrix(a, "kron factor a")
    b = as_complex_matrix(b, "kron factor b")
    elements = a.shape[0] * b.shape[0] * a.shape[1] * b.shape[1]
    if elements > MAX_DENSE_ELEMENTS:
        raise ResourceLimitError(
            f"kron result would hold {elements} entries "
            f"(cap {MAX_DENSE_ELEMENTS})"
        )
    return np.kron(a, b)


def hermitian_eigensystem(matrix) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvectors of a Hermitian matrix."""
    matrix = as_complex_matrix(matrix)
    values, vectors = np.linalg.eigh(matrix)
    require_finite(vectors, "eigenvectors")
    return values, vectors


def nullspace_vector(matrix, rel_tol: float = 1e-10) -> np.ndarray:
    """Unit vector v with ||M v|| <= rel_tol * ||M||.

    Extracted as the eigenvector of M^dag M belonging to the smallest
    eigenvalue.  The phase is fixed so the largest component is real and
    positive, which makes the output reproducible.

    Raises
    ------
    DegenerateNullSpaceError
        If the two smallest eigenvalues of M^dag M both sit below the
        tolerance (null space dimension > 1), or M == 0.
    ConvergenceError
        If no vector meets the residual bound (M has no null space at
        this tolerance).
    """
    matrix = as_complex_matrix(matrix)
    if matrix.shape[0] != matrix.shape[1]:
        raise ValueError("nullspace_vector needs a square matrix")
    norm = np.linalg.norm(matrix)
    if norm == 0.0:
        raise DegenerateNullSpaceError("zero matrix: every vector is null")
    gram = matrix.conj().T @ matrix
    values, vectors = np.linalg.eigh(gram)
    threshold = (rel_tol * norm) ** 2
    if matrix.shape[0] > 1 and values[1] < threshold:
        raise DegenerateNullSpaceError(
            f"two smallest singular values below tolerance "
            f"({np.sqrt(np.abs(values[:2]))} vs {rel_tol * norm:.3e})"
        )
    vec = vectors[:, 0]
    pivot = int(np.argmax(np.abs(vec)))
    vec = vec * (np.conj(vec[pivot]) / np.abs(vec[pivot]))
    residual = np.linalg.norm(matrix @ vec)
    if residual > rel_tol * norm:
        raise ConvergenceError(
            f"no null vector at tolerance: residual {residual:.3e} "
            f"> {rel_tol * norm:.3e}"
        )
    return vec


def spectral_norm(matrix, iterations: int = 30, seed: int = 7) -> float:
    """Power-iteration estimate of the largest singular value."""
    matrix = as_complex_matrix(matrix)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(matrix.shape[1]) + 1j * rng.standard_normal(matrix.shape[1])
    v /= np.linalg.norm(v)
    sigma = 0.0
    for _ in range(iterations):
        w = matrix.conj().T @ (matrix @ v)
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        v = w / nw
        sigma = np.sqrt(nw)
    return float(sigma)


def rk4_step(deriv, state: np.ndarray, step: float) -> np.ndarray:
    """One classical fourth-order Runge-Kutta step for autonomous systems."""
    k1 = deriv(state)
    k2 = deriv(state + 0.5 * step * k1)
    k3 = deriv(state + 0.5 * step * k2)
    k4 = deriv(state + step * k3)
    return state + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def rk4_evolve(deriv, state0: np.ndarray, t_end: float, step: float) -> np.ndarray:
    """Integrate dx/dt = deriv(x) from 0 to t_end with fixed-step RK4.

    The final partial step lands exactly on t_end.  Aborts with
    ValueError as soon as the state picks up a NaN or Inf.
    """
    if step <= 0.0:
        raise ValueError("step must be positive")
    if t_end < 0.0:
        raise ValueError("t_end must be non-negative")
    state = np.array(state0, dtype=complex)
    n_full, remainder = divmod(t_end, step)
    for _ in range(int(n_full)):
        state = rk4_step(deriv, state, step)
        if not np.all(np.isfinite(state)):
            raise ValueError("rk4_evolve: state became non-finite")
    if remainder > 0.0:
        state = rk4_step(deriv, state, remainder)
        if not np.all(np.isfinite(state)):
            raise ValueError("rk4_evolve: state became non-finite")
    return state

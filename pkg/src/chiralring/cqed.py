"""Cavity-QED solvers.

Two layers:

* the semiclassical steady state of the coupled-mode equations, whose
  transmission with ``sigma_z = -1`` is algebraically identical to the
  single-photon-transport formula, and

* the full Lindblad master equation on a truncated joint Fock space
  (ring mode a, counter-propagating mode b, two-level emitter), solved
  for its steady state and converted to a transmission through the
  input-output relation ``a_out = alpha_in - sqrt(2 kappa_ex) <a>``.

Dissipator convention: the two ring dissipators both carry the full
``kappa_tot`` and the brackets have no factor 1/2, so every kappa and
gamma is an amplitude decay rate and the transmission-dip FWHM is
``2 kappa_tot``.

Steady states are found by null-space extraction of the Liouvillian.
The production path solves the trace-constrained linear system directly
(deterministic, one LU per detuning); the eigenvector-based extraction in
:mod:`chiralring.numerics` and fixed-step RK4 time evolution are kept as
independent validation paths and must agree with it.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from . import numerics
from .errors import (ConvergenceError, DegenerateNullSpaceError,
                     ResourceLimitError)
from .model import SystemConfig, RateSet, apply_direction

DEFAULT_LIOUVILLIAN_CAP = 4096


@dataclass(frozen=True)
class HilbertSpace:
    """Fock truncation of the two ring modes; the emitter adds a factor 2."""

    n_max_a: int = 4
    n_max_b: int = 4

    def __post_init__(self):
        if self.n_max_a < 1 or self.n_max_b < 1:
            raise ValueError("Fock truncations must be >= 1")
        if self.dimension < 8:
            raise ValueError(
                f"truncation too small: joint dimension {self.dimension} < 8"
            )

    @property
    def dimension(self) -> int:
        return self.n_max_a * self.n_max_b * 2

    @property
    def liouvillian_dimension(self) -> int:
        return self.dimension ** 2


def annihilation(n: int) -> np.ndarray:
    """Lowering operator on an n-level Fock space."""
    return np.diag(np.sqrt(np.arange(1.0, n)), 1).astype(complex)


@dataclass(frozen=True)
class JointOperators:
    """Mode and emitter operators promoted to the joint space.

    Tensor factor order is fixed as (mode a) x (mode b) x (emitter) so
    operator matrices are bit-for-bit reproducible.
    """

    a: np.ndarray
    b: np.ndarray
    sigma_minus: np.ndarray
    identity: np.ndarray

    @classmethod
    def build(cls, space: HilbertSpace) -> "JointOperators":
        i_a = np.eye(space.n_max_a, dtype=complex)
        i_b = np.eye(space.n_max_b, dtype=complex)
        i_q = np.eye(2, dtype=complex)
        lower_q = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
        a = numerics.kron(numerics.kron(annihilation(space.n_max_a), i_b), i_q)
        b = numerics.kron(numerics.kron(i_a, annihilation(space.n_max_b)), i_q)
        sm = numerics.kron(numerics.kron(i_a, i_b), lower_q)
        return cls(a, b, sm, np.eye(space.dimension, dtype=complex))


def build_hamiltonian(config: SystemConfig, space: HilbertSpace,
                      delta1: float, delta2: float | None = None,
                      operators: JointOperators | None = None) -> np.ndarray:
    """Rotating-frame Hamiltonian on the truncated joint space.

    H = -delta1 (a^+ a + b^+ b) - delta2 s^+ s
        + i sqrt(2 kappa_ex) alpha_in (a^+ - a)
        + g (a^+ s + s^+ a) + h (a^+ b + b^+ a)

    The chirality rule is applied first, so a backward config enters with
    g = 0.  Hermitian by construction.
    """
    config = apply_direction(config)
    if delta2 is None:
        delta2 = delta1 + config.emitter_offset
    ops = operators if operators is not None else JointOperators.build(space)
    rates = config.rates
    a, b, sm = ops.a, ops.b, ops.sigma_minus
    ad, bd, sp = a.conj().T, b.conj().T, sm.conj().T
    h_matrix = (-delta1 * (ad @ a) - delta2 * (sp @ sm) - delta1 * (bd @ b))
    h_matrix += 1j * math.sqrt(2.0 * rates.kappa_ex) * config.alpha_in * (ad - a)
    coupling = rates.g * (ad @ sm) + rates.h * (ad @ b)
    h_matrix += coupling + coupling.conj().T
    return numerics.require_finite(h_matrix, "hamiltonian")


def _dissipator(collapse: np.ndarray, rate: float,
                identity: np.ndarray) -> np.ndarray:
    # rate * (2 c rho c^+ - c^+ c rho - rho c^+ c), column-stacked
    number = collapse.conj().T @ collapse
    return rate * (2.0 * numerics.kron(np.conj(collapse), collapse)
                   - numerics.kron(identity, number)
                   - numerics.kron(number.T, identity))


def build_liouvillian(hamiltonian: np.ndarray, rates: RateSet,
                      space: HilbertSpace,
                      operators: JointOperators | None = None,
                      cap: int = DEFAULT_LIOUVILLIAN_CAP) -> np.ndarray:
    """Matrix L with vec(rho_dot) = L vec(rho) (column-stacked vec).

    Both ring modes dissipate at kappa_tot and the emitter at gamma, all
    without the conventional factor 1/2.
    """
    if space.liouvillian_dimension > cap:
        raise ResourceLimitError(
            f"Liouvillian dimension {space.liouvillian_dimension} exceeds "
            f"the cap {cap}"
        )
    hamiltonian = numerics.as_complex_matrix(hamiltonian, "hamiltonian")
    scale = max(1.0, np.abs(hamiltonian).max())
    if np.abs(hamiltonian - hamiltonian.conj().T).max() > 1e-12 * scale:
        raise ValueError("hamiltonian must be Hermitian")
    ops = operators if operators is not None else JointOperators.build(space)
    identity = ops.identity
    liouvillian = -1j * (numerics.kron(identity, hamiltonian)
                         - numerics.kron(hamiltonian.T, identity))
    liouvillian += _dissipator(ops.a, rates.kappa_tot, identity)
    liouvillian += _dissipator(ops.b, rates.kappa_tot, identity)
    liouvillian += _dissipator(ops.sigma_minus, rates.gamma, identity)
    return numerics.require_finite(liouvillian, "liouvillian")


def vectorize(rho: np.ndarray) -> np.ndarray:
    """Column-stacked vec(rho)."""
    return np.asarray(rho, dtype=complex).reshape(-1, order="F")


def unvectorize(vec: np.ndarray, dim: int) -> np.ndarray:
    return np.asarray(vec, dtype=complex).reshape(dim, dim, order="F")


def steady_state(liouvillian: np.ndarray, dim: int, method: str = "direct",
                 rel_tol: float = 1e-10,
                 max_steps: int = 2_000_000) -> tuple[np.ndarray, float]:
    """Steady-state density matrix of a Liouvillian.

    Parameters
    ----------
    method : {"direct", "eigen", "evolve"}
        "direct" replaces one redundant row with the trace constraint and
        solves the linear system; "eigen" extracts the null vector from
        the eigendecomposition of L^+ L; "evolve" integrates vec(rho)
        from the vacuum with fixed-step RK4 until the residual settles.

    Returns
    -------
    (rho, residual) : density matrix with unit trace and the relative
        residual ||L vec(rho)|| / ||L||.
    """
    liouvillian = numerics.as_complex_matrix(liouvillian, "liouvillian")
    if liouvillian.shape != (dim * dim, dim * dim):
        raise ValueError("liouvillian shape does not match the space dimension")
    norm = np.linalg.norm(liouvillian)
    if norm == 0.0:
        raise DegenerateNullSpaceError("zero Liouvillian has no unique steady state")
    trace_indices = np.arange(dim) * (dim + 1)

    if method == "direct":
        constrained = liouvillian.copy()
        constrained[0, :] = 0.0
        constrained[0, trace_indices] = norm / dim
        rhs = np.zeros(dim * dim, dtype=complex)
        rhs[0] = norm / dim
        try:
            vec = np.linalg.solve(constrained, rhs)
        except np.linalg.LinAlgError as exc:
            raise DegenerateNullSpaceError(
                f"trace-constrained steady-state system is singular: {exc}"
            ) from exc
    elif method == "eigen":
        vec = numerics.nullspace_vector(liouvillian, rel_tol=rel_tol)
        trace = vec[trace_indices].sum()
        if abs(trace) < 1e-14:
            raise DegenerateNullSpaceError(
                "null vector has (near) zero trace; not a density matrix"
            )
        vec = vec / trace
    elif method == "evolve":
        vec = np.zeros(dim * dim, dtype=complex)
        vec[0] = 1.0  # vacuum projector
        step = 0.1 / numerics.spectral_norm(liouvillian)
        chunk = 200
        steps_done = 0
        while True:
            residual = np.linalg.norm(liouvillian @ vec)
            if residual <= rel_tol * norm:
                break
            if steps_done >= max_steps:
                raise ConvergenceError(
                    f"time evolution did not settle within {max_steps} steps "
                    f"(residual {residual / norm:.3e} relative)"
                )
            vec = numerics.rk4_evolve(lambda x: liouvillian @ x, vec,
                                      chunk * step, step)
            steps_done += chunk
        vec = vec / vec[trace_indices].sum()
    else:
        raise ValueError(f"unknown steady-state method {method!r}")

    residual = np.linalg.norm(liouvillian @ vec)
    if residual > rel_tol * norm:
        raise ConvergenceError(
            f"steady-state residual {residual / norm:.3e} exceeds "
            f"{rel_tol:.1e} (relative)"
        )
    rho = unvectorize(vec, dim)
    rho = rho / np.trace(rho)
    return rho, float(residual / norm)


@dataclass(frozen=True)
class SteadyStateResult:
    """Steady-state observables plus the physicality certificate."""

    method: str
    a_expect: complex
    b_expect: complex
    sigma_expect: complex
    a_out: complex
    transmission: float
    residual: float
    trace_deviation: float
    hermiticity_deviation: float
    min_eigenvalue: float
    top_population_a: float
    top_population_b: float
    rho: np.ndarray | None = None


def _populations(rho: np.ndarray, space: HilbertSpace) -> tuple[float, float]:
    diag = np.real(np.diag(rho)).reshape(space.n_max_a, space.n_max_b, 2)
    return float(diag[-1, :, :].sum()), float(diag[:, -1, :].sum())


def _result_from_rho(rho, residual, method, config, space, ops,
                     keep_rho=False) -> SteadyStateResult:
    a_expect = complex(np.trace(ops.a @ rho))
    b_expect = complex(np.trace(ops.b @ rho))
    sigma_expect = complex(np.trace(ops.sigma_minus @ rho))
    a_out = config.alpha_in - math.sqrt(2.0 * config.rates.kappa_ex) * a_expect
    if config.alpha_in > 0.0:
        transmission = abs(a_out / config.alpha_in) ** 2
    else:
        transmission = float("nan")
    top_a, top_b = _populations(rho, space)
    hermitian_part = (rho + rho.conj().T) / 2.0
    return SteadyStateResult(
        method=method,
        a_expect=a_expect,
        b_expect=b_expect,
        sigma_expect=sigma_expect,
        a_out=a_out,
        transmission=transmission,
        residual=residual,
        trace_deviation=float(abs(np.trace(rho) - 1.0)),
        hermiticity_deviation=float(np.abs(rho - rho.conj().T).max()),
        min_eigenvalue=float(np.linalg.eigvalsh(hermitian_part)[0]),
        top_population_a=top_a,
        top_population_b=top_b,
        rho=rho if keep_rho else None,
    )


def master_steady_state(config: SystemConfig, delta1: float,
                        delta2: float | None = None,
                        space: HilbertSpace | None = None,
                        method: str = "direct",
                        cap: int = DEFAULT_LIOUVILLIAN_CAP,
                        keep_rho: bool = False) -> SteadyStateResult:
    """One master-equation steady state at a single detuning."""
    space = space if space is not None else HilbertSpace()
    config = apply_direction(config)
    ops = JointOperators.build(space)
    hamiltonian = build_hamiltonian(config, space, delta1, delta2, ops)
    liouvillian = build_liouvillian(hamiltonian, config.rates, space, ops, cap)
    rho, residual = steady_state(liouvillian, space.dimension, method=method)
    tag = "time-evolution" if method == "evolve" else "null-space"
    return _result_from_rho(rho, residual, tag, config, space, ops, keep_rho)


class MasterSweep:
    """Reusable master-equation solver for a detuning sweep.

    The Liouvillian is affine in the probe detuning, so the constant part
    and the detuning generator are assembled once and every grid point
    costs a single dense solve.
    """

    def __init__(self, config: SystemConfig, space: HilbertSpace | None = None,
                 cap: int = DEFAULT_LIOUVILLIAN_CAP):
        self.config = apply_direction(config)
        self.space = space if space is not None else HilbertSpace()
        self.ops = JointOperators.build(self.space)
        h_zero = build_hamiltonian(self.config, self.space, 0.0,
                                   self.config.emitter_offset, self.ops)
        self.base = build_liouvillian(h_zero, self.config.rates, self.space,
                                      self.ops, cap)
        a, b, sm = self.ops.a, self.ops.b, self.ops.sigma_minus
        number = (a.conj().T @ a + b.conj().T @ b + sm.conj().T @ sm)
        identity = self.ops.identity
        # d/d(delta1) of the Liouvillian; delta2 tracks delta1 up to the
        # constant emitter offset already folded into the base
        self.generator = 1j * (numerics.kron(identity, number)
                               - numerics.kron(number.T, identity))

    def solve(self, delta1: float, keep_rho: bool = False) -> SteadyStateResult:
        liouvillian = self.base + delta1 * self.generator
        rho, residual = steady_state(liouvillian, self.space.dimension,
                                     method="direct")
        return _result_from_rho(rho, residual, "null-space", self.config,
                                self.space, self.ops, keep_rho)


# ---------------------------------------------------------------------------
# Semiclassical layer
# ---------------------------------------------------------------------------

def _detunings(config: SystemConfig, delta1, delta2):
    delta1 = np.asarray(delta1, dtype=float)
    if delta2 is None:
        delta2 = delta1 + config.emitter_offset
    else:
        delta2 = np.asarray(delta2, dtype=float)
    return delta1, delta2


def semiclassical_amplitude(config: SystemConfig, delta1, delta2=None):
    """Steady-state ring-mode amplitude <a> of the coupled-mode equations.

    <a> = i alpha_in sqrt(2 kappa_ex) D1 D2
          / (D1 (D1 D2 + sigma_z g^2) - D2 h^2)

    with D1 = delta1 + i kappa_tot, D2 = delta2 + i gamma and the frozen
    emitter inversion sigma_z from the config (default -1, the
    weak-probe approximation).
    """
    config = apply_direction(config)
    delta1, delta2 = _detunings(config, delta1, delta2)
    r = config.rates
    d1 = delta1 + 1j * r.kappa_tot
    d2 = delta2 + 1j * r.gamma
    den = d1 * (d1 * d2 + config.sigma_z * r.g ** 2) - d2 * r.h ** 2
    if np.any(den == 0.0):
        raise ValueError("singular semiclassical amplitude denominator")
    out = 1j * config.alpha_in * math.sqrt(2.0 * r.kappa_ex) * d1 * d2 / den
    if out.ndim == 0:
        return complex(out)
    return out


def semiclassical_fixed_point(config: SystemConfig, delta1, delta2=None):
    """Steady-state triple (<a>, <b>, <sigma->)."""
    config = apply_direction(config)
    delta1, delta2 = _detunings(config, delta1, delta2)
    r = config.rates
    a = np.asarray(semiclassical_amplitude(config, delta1, delta2))
    d1 = delta1 + 1j * r.kappa_tot
    d2 = delta2 + 1j * r.gamma
    if r.g == 0.0:
        sigma = np.zeros_like(a)
    else:
        if np.any(d2 == 0.0):
            raise ValueError("emitter fixed point undefined at zero d2")
        sigma = -r.g * config.sigma_z * a / d2
    if r.h == 0.0:
        b = np.zeros_like(a)
    else:
        if np.any(d1 == 0.0):
            raise ValueError("counter-mode fixed point undefined at zero d1")
        b = r.h * a / d1
    if a.ndim == 0:
        return complex(a), complex(b), complex(sigma)
    return a, b, sigma


def semiclassical_transmission(config: SystemConfig, delta1, delta2=None):
    """Transmission amplitude of the semiclassical steady state.

    Closed form; identical to the input-output route
    ``(alpha_in - sqrt(2 kappa_ex) <a>) / alpha_in`` and, at
    ``sigma_z = -1``, term-for-term identical to the single-photon
    transport amplitude.
    """
    config = apply_direction(config)
    delta1, delta2 = _detunings(config, delta1, delta2)
    r = config.rates
    d1 = delta1 + 1j * r.kappa_tot
    d2 = delta2 + 1j * r.gamma
    sg2 = config.sigma_z * r.g ** 2
    num = d1 * ((delta1 + 1j * (r.kappa_in - r.kappa_ex)) * d2 + sg2) \
        - d2 * r.h ** 2
    den = d1 * (d1 * d2 + sg2) - d2 * r.h ** 2
    if np.any(den == 0.0):
        raise ValueError("singular semiclassical transmission denominator")
    out = num / den
    if out.ndim == 0:
        return complex(out)
    return out

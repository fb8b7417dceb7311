import dataclasses
import math

import numpy as np
import pytest

import chiralring as cr
from chiralring import cqed, numerics, spt
from chiralring.errors import ResourceLimitError, SolverError
from chiralring.model import TWO_PI

from conftest import balanced_reference_config, rng

GAMMA = TWO_PI * 6e6
FSR = TWO_PI * 3e12
KAPPA_TOT = TWO_PI * 6e10


class TestHilbertSpace:
    def test_dimensions(self):
        space = cqed.HilbertSpace(4, 4)
        assert space.dimension == 32
        assert space.liouvillian_dimension == 1024

    def test_too_small(self):
        with pytest.raises(ValueError):
            cqed.HilbertSpace(1, 1)


class TestOperators:
    def test_commutator_truncation_artifact(self):
        a = cqed.annihilation(4)
        comm = a @ a.conj().T - a.conj().T @ a
        # identity except the corner element, which picks up 1 - n
        assert np.allclose(np.diag(comm), [1.0, 1.0, 1.0, -3.0], atol=1e-14)
        assert np.abs(comm - np.diag(np.diag(comm))).max() == 0.0

    def test_joint_shapes(self):
        ops = cqed.JointOperators.build(cqed.HilbertSpace(3, 2))
        assert ops.a.shape == (12, 12)
        assert ops.sigma_minus.shape == (12, 12)


class TestHamiltonian:
    def test_all_zero(self, bare_config):
        config = dataclasses.replace(bare_config, alpha_in=0.0)
        rates = dataclasses.replace(config.rates, g=0.0, h=0.0)
        config = dataclasses.replace(config, rates=rates)
        space = cqed.HilbertSpace(2, 2)
        h_matrix = cqed.build_hamiltonian(config, space, 0.0, 0.0)
        assert np.abs(h_matrix).max() == 0.0

    def test_drive_matrix_element(self, bare_config):
        space = cqed.HilbertSpace(4, 4)
        h_matrix = cqed.build_hamiltonian(bare_config, space, 0.0, 0.0)
        expected = -1j * math.sqrt(2.0 * bare_config.rates.kappa_ex) * 0.1
        # |1_a> with the (a, b, emitter) factor ordering sits at index 8
        assert h_matrix[0, 8] == pytest.approx(expected, rel=1e-14)

    def test_hermitian(self, strong_emitter_config):
        space = cqed.HilbertSpace(4, 4)
        h_matrix = cqed.build_hamiltonian(strong_emitter_config, space,
                                          0.3 * KAPPA_TOT)
        scale = np.abs(h_matrix).max()
        assert np.abs(h_matrix - h_matrix.conj().T).max() <= 1e-12 * scale

    def test_single_excitation_splitting(self, strong_emitter_config):
        config = strong_emitter_config
        g = config.rates.g
        space = cqed.HilbertSpace(4, 4)
        h_matrix = cqed.build_hamiltonian(config, space, 0.0, 0.0)
        # single-excitation basis: |1_a, 0, g>, |0, 1_b, g>, |0, 0, e>
        idx = [8, 2, 1]
        block = h_matrix[np.ix_(idx, idx)]
        # oracle: the same block written by hand
        oracle = np.array([[0.0, config.rates.h, g],
                           [config.rates.h, 0.0, 0.0],
                           [g, 0.0, 0.0]], dtype=complex)
        drive = -1j * math.sqrt(2 * config.rates.kappa_ex) * config.alpha_in
        # remove the drive column linking |1_a> to the vacuum: not part
        # of the closed single-excitation block
        eig_block = np.linalg.eigvalsh(block)
        eig_oracle = np.linalg.eigvalsh(oracle)
        assert np.allclose(eig_block, eig_oracle, rtol=1e-12, atol=1e-6 * g)
        assert eig_block[0] == pytest.approx(-g, rel=1e-12)
        assert eig_block[-1] == pytest.approx(g, rel=1e-12)
        assert abs(drive) < g  # sanity: weak drive never reorders the split

    def test_backward_direction_decouples_emitter(self, strong_emitter_config):
        backward = dataclasses.replace(strong_emitter_config,
                                       direction=cr.Direction.BACKWARD)
        space = cqed.HilbertSpace(3, 3)
        h_fwd = cqed.build_hamiltonian(strong_emitter_config, space, 0.0)
        h_bwd = cqed.build_hamiltonian(backward, space, 0.0)
        assert np.abs(h_fwd - h_bwd).max() > 0.0
        # backward Hamiltonian never mixes the emitter sector
        ops = cqed.JointOperators.build(space)
        coupling = ops.a.conj().T @ ops.sigma_minus
        overlap = np.vdot(coupling, h_bwd)
        assert abs(overlap) == 0.0


class TestLiouvillian:
    def test_zero_everything(self):
        space = cqed.HilbertSpace(2, 2)
        rates = cr.RateSet(kappa_in=0.0, kappa_ex=0.0, gamma=0.0)
        h_matrix = np.zeros((8, 8), dtype=complex)
        liouvillian = cqed.build_liouvillian(h_matrix, rates, space)
        assert np.abs(liouvillian).max() == 0.0

    def test_trace_preservation(self):
        r = rng(40)
        space = cqed.HilbertSpace(3, 2)
        dim = space.dimension
        rates = cr.RateSet(kappa_in=0.7, kappa_ex=0.6, gamma=0.4)
        ops = cqed.JointOperators.build(space)
        h_matrix = 0.8 * (ops.a.conj().T @ ops.sigma_minus
                          + ops.sigma_minus.conj().T @ ops.a)
        liouvillian = cqed.build_liouvillian(h_matrix, rates, space, ops)
        for _ in range(100):
            raw = r.standard_normal((dim, dim)) + 1j * r.standard_normal((dim, dim))
            rho = (raw + raw.conj().T) / 2.0
            rho_dot = cqed.unvectorize(liouvillian @ cqed.vectorize(rho), dim)
            assert abs(np.trace(rho_dot)) < 1e-12 * max(
                1.0, np.abs(rho_dot).max())

    def test_damped_mode_decay(self):
        # only mode a occupied; <n_a>(t) = exp(-2 kappa_tot t) <n_a>(0)
        space = cqed.HilbertSpace(4, 2)
        kappa = 0.15
        rates = cr.RateSet(kappa_in=kappa, kappa_ex=0.0, gamma=0.0)
        dim = space.dimension
        ops = cqed.JointOperators.build(space)
        liouvillian = cqed.build_liouvillian(
            np.zeros((dim, dim), dtype=complex), rates, space, ops)
        rho0 = np.zeros((dim, dim), dtype=complex)
        one_a = 1 * 2 * 2  # |1_a, 0_b, g>
        rho0[one_a, one_a] = 1.0
        t_end = 0.7
        vec = numerics.rk4_evolve(lambda x: liouvillian @ x,
                                  cqed.vectorize(rho0), t_end, 1e-3)
        rho = cqed.unvectorize(vec, dim)
        number = ops.a.conj().T @ ops.a
        occupancy = np.trace(number @ rho).real
        assert occupancy == pytest.approx(math.exp(-2.0 * kappa * t_end),
                                          rel=1e-8)

    def test_requires_hermitian(self):
        space = cqed.HilbertSpace(2, 2)
        rates = cr.RateSet(kappa_in=0.1, kappa_ex=0.1, gamma=0.1)
        h_matrix = np.zeros((8, 8), dtype=complex)
        h_matrix[0, 1] = 1.0
        with pytest.raises(ValueError):
            cqed.build_liouvillian(h_matrix, rates, space)

    def test_dimension_cap(self):
        space = cqed.HilbertSpace(16, 4)
        rates = cr.RateSet(kappa_in=0.1, kappa_ex=0.1, gamma=0.1)
        dim = space.dimension
        with pytest.raises(ResourceLimitError):
            cqed.build_liouvillian(np.zeros((dim, dim), dtype=complex),
                                   rates, space)


class TestSteadyState:
    def test_undriven_is_vacuum(self, bare_config):
        config = dataclasses.replace(bare_config, alpha_in=0.0)
        result = cqed.master_steady_state(config, 0.0,
                                          space=cqed.HilbertSpace(3, 3),
                                          keep_rho=True)
        vacuum = np.zeros_like(result.rho)
        vacuum[0, 0] = 1.0
        assert np.abs(result.rho - vacuum).max() < 1e-12
        assert math.isnan(result.transmission)

    def test_bare_resonator_amplitude(self, bare_config):
        result = cqed.master_steady_state(bare_config, 0.0)
        rates = bare_config.rates
        expected = bare_config.alpha_in * math.sqrt(2 * rates.kappa_ex) \
            / rates.kappa_tot
        assert result.a_expect == pytest.approx(expected, rel=1e-9)
        assert result.transmission < 1e-3

    def test_strong_coupling_matches_semiclassical(self, strong_emitter_config):
        result = cqed.master_steady_state(strong_emitter_config, 0.0)
        amp = cqed.semiclassical_transmission(strong_emitter_config, 0.0)
        assert abs(result.transmission - abs(amp) ** 2) < 1e-2

    def test_three_paths_agree(self):
        config = balanced_reference_config()
        space = cqed.HilbertSpace(3, 3)
        results = {
            method: cqed.master_steady_state(config, 0.37, space=space,
                                             method=method)
            for method in ("direct", "eigen", "evolve")
        }
        direct = results["direct"].a_expect
        assert abs(results["eigen"].a_expect - direct) < 1e-8
        assert abs(results["evolve"].a_expect - direct) < 1e-8
        assert results["evolve"].method == "time-evolution"

    def test_residual_contract(self, strong_emitter_config):
        result = cqed.master_steady_state(strong_emitter_config,
                                          0.5 * KAPPA_TOT)
        assert result.residual < 1e-10

    def test_physicality_certificate(self, strong_emitter_config):
        result = cqed.master_steady_state(strong_emitter_config,
                                          1.0 * KAPPA_TOT)
        assert result.trace_deviation < 1e-8
        assert result.hermiticity_deviation < 1e-10
        assert result.min_eigenvalue > -1e-8
        assert result.top_population_a < 1e-6
        assert result.top_population_b < 1e-6

    def test_degenerate_null_space(self):
        # undamped, undriven emitter sector decouples: two steady states
        space = cqed.HilbertSpace(3, 3)
        dim = space.dimension
        rates = cr.RateSet(kappa_in=0.5, kappa_ex=0.5, gamma=0.0)
        ops = cqed.JointOperators.build(space)
        liouvillian = cqed.build_liouvillian(
            np.zeros((dim, dim), dtype=complex), rates, space, ops)
        with pytest.raises(SolverError):
            cqed.steady_state(liouvillian, dim, method="eigen")

    def test_unknown_method(self, bare_config):
        with pytest.raises(ValueError):
            cqed.master_steady_state(bare_config, 0.0, method="magic")


class TestTruncation:
    def test_top_level_population_certified(self, strong_emitter_config):
        result = cqed.master_steady_state(strong_emitter_config, 0.0)
        assert result.top_population_a < 1e-6
        assert result.top_population_b < 1e-6

    def test_doubling_each_mode_changes_nothing(self, strong_emitter_config):
        config = strong_emitter_config
        base = cqed.master_steady_state(config, 0.0).transmission
        doubled_a = cqed.master_steady_state(
            config, 0.0, space=cqed.HilbertSpace(8, 4)).transmission
        doubled_b = cqed.master_steady_state(
            config, 0.0, space=cqed.HilbertSpace(4, 8)).transmission
        assert abs(doubled_a - base) < 1e-4
        assert abs(doubled_b - base) < 1e-4


def test_weak_drive_convergence():
    # saturation corrections shrink with the drive; visible only with
    # order-unity rates, far below noise at laboratory angular rates
    config = balanced_reference_config(g=0.8, h=0.0, gamma=0.05,
                                       alpha_in=0.2)
    space = cqed.HilbertSpace(4, 2)
    deviations = []
    for alpha_in in (0.2, 0.1, 0.05):
        probe = dataclasses.replace(config, alpha_in=alpha_in)
        result = cqed.master_steady_state(probe, 0.8, space=space)
        semi = abs(cqed.semiclassical_transmission(probe, 0.8)) ** 2
        deviations.append(abs(result.transmission - semi))
    assert deviations[0] + 1e-4 >= deviations[1]
    assert deviations[1] + 1e-4 >= deviations[2]


class TestMasterSweepSolver:
    def test_matches_single_shot(self, strong_emitter_config):
        solver = cqed.MasterSweep(strong_emitter_config)
        for delta in (0.0, 0.7 * KAPPA_TOT, -2.3 * KAPPA_TOT):
            via_sweep = solver.solve(delta).transmission
            single = cqed.master_steady_state(strong_emitter_config,
                                              delta).transmission
            assert via_sweep == pytest.approx(single, rel=1e-10, abs=1e-12)

    def test_emitter_offset_folded(self, bare_config):
        rates = dataclasses.replace(
            bare_config.rates,
            omega_qe=bare_config.geometry.resonance - 0.5 * KAPPA_TOT)
        config = dataclasses.replace(bare_config, rates=rates)
        solver = cqed.MasterSweep(config)
        delta = 0.3 * KAPPA_TOT
        via_sweep = solver.solve(delta).transmission
        single = cqed.master_steady_state(
            config, delta, delta2=delta + 0.5 * KAPPA_TOT).transmission
        assert via_sweep == pytest.approx(single, rel=1e-10)


class TestSemiclassical:
    def test_resonant_amplitude(self, bare_config):
        rates = bare_config.rates
        amp = cqed.semiclassical_amplitude(bare_config, 0.0)
        expected = bare_config.alpha_in * math.sqrt(2 * rates.kappa_ex) \
            / rates.kappa_tot
        assert amp == pytest.approx(expected, rel=1e-14)

    def test_no_drive(self, bare_config):
        config = dataclasses.replace(bare_config, alpha_in=0.0)
        assert cqed.semiclassical_amplitude(config, 0.3 * KAPPA_TOT) == 0.0

    def test_input_output_identity(self, strong_emitter_config):
        config = strong_emitter_config
        delta = np.linspace(-5, 5, 101) * KAPPA_TOT
        closed = cqed.semiclassical_transmission(config, delta)
        amp = cqed.semiclassical_amplitude(config, delta)
        via_io = (config.alpha_in
                  - math.sqrt(2 * config.rates.kappa_ex) * amp) \
            / config.alpha_in
        assert np.abs(closed - via_io).max() < 1e-12

    def test_weak_probe_equals_transport(self, strong_emitter_config):
        config = strong_emitter_config
        rates = config.rates
        delta = np.linspace(-10, 10, 1001) * KAPPA_TOT
        semi = cqed.semiclassical_transmission(config, delta)
        transport = spt.transmission_amplitude(
            delta, delta, rates.kappa_in, rates.kappa_ex, rates.gamma,
            rates.g, rates.h)
        assert np.abs(semi - transport).max() == 0.0

    def test_sigma_z_configurable(self, strong_emitter_config):
        config = dataclasses.replace(strong_emitter_config, sigma_z=-0.5)
        rates = config.rates
        delta = 0.5 * KAPPA_TOT
        out = cqed.semiclassical_transmission(config, delta)
        d1 = delta + 1j * rates.kappa_tot
        d2 = delta + 1j * rates.gamma
        sg2 = -0.5 * rates.g ** 2
        oracle = (d1 * ((delta + 0j) * d2 + sg2) - d2 * rates.h ** 2) \
            / (d1 * (d1 * d2 + sg2) - d2 * rates.h ** 2)
        assert out == pytest.approx(oracle, rel=1e-14)

    def test_fixed_point_satisfies_motion_equations(self):
        config = balanced_reference_config(g=0.8, h=0.3, gamma=0.4)
        rates = config.rates
        for delta in (0.0, 0.45, -1.2):
            a, b, sigma = cqed.semiclassical_fixed_point(config, delta)
            d1 = delta + 1j * rates.kappa_tot
            d2 = delta + 1j * rates.gamma
            drive = config.alpha_in * math.sqrt(2 * rates.kappa_ex)
            res_a = 1j * d1 * a + drive - 1j * rates.g * sigma \
                - 1j * rates.h * b
            res_sigma = 1j * d2 * sigma + 1j * rates.g * config.sigma_z * a
            res_b = 1j * d1 * b - 1j * rates.h * a
            scale = max(abs(drive), 1.0)
            assert abs(res_a) < 1e-10 * scale
            assert abs(res_sigma) < 1e-10 * scale
            assert abs(res_b) < 1e-10 * scale

    def test_backward_direction(self, strong_emitter_config):
        backward = dataclasses.replace(strong_emitter_config,
                                       direction=cr.Direction.BACKWARD)
        out = cqed.semiclassical_transmission(backward, 0.0)
        assert abs(out) ** 2 < 1e-12

import numpy as np
import pytest

from esdkit.channel import apply_channel, coefficients_from_gammas, coefficients_markov
from esdkit.entanglement import concurrence
from esdkit.errors import IntegratorError
from esdkit.master import (
    AtomParams,
    RateFunctions,
    integrate_master,
    interaction_trajectory,
    local_coherence_decay,
    master_rhs,
    markov_rates,
    table_rates,
    to_interaction_picture,
)
from esdkit.memory import ExponentialKernel, full_solution, solve_amplitude
from esdkit.states import pure_state, random_state, standard_family, xstate_to_dense

ATOMS = AtomParams(omega_a=1.3, omega_b=0.7)


def test_markov_rates_values_and_validation():
    r = markov_rates(1.0)
    assert r.f(0.0) == 0.5 + 0.0j
    assert r.g(2.7) == 0.5 + 0.0j
    assert markov_rates(1.0, 3.0).g(0.0) == 1.5 + 0.0j
    with pytest.raises(ValueError):
        markov_rates(-1.0)
    with pytest.raises(ValueError):
        markov_rates(1.0, -0.5)


def test_ground_state_is_a_fixed_point():
    rho = np.zeros((4, 4), dtype=complex)
    rho[3, 3] = 1.0
    rhs = master_rhs(rho, 0.0, markov_rates(1.0), ATOMS)
    assert np.array_equal(rhs, np.zeros((4, 4), dtype=complex))


def test_rhs_is_hermitian_and_traceless():
    rho = random_state(11)
    rhs = master_rhs(rho, 0.3, markov_rates(0.8, 1.7), AtomParams(1.1, 0.4))
    assert np.max(np.abs(rhs - rhs.conj().T)) < 1e-13
    assert abs(np.trace(rhs)) < 1e-13


def test_rhs_single_excitation_coherence_pattern():
    # the |eg><ge| element sees decay (rate_a+rate_b)/2 plus the frequency
    # difference as a phase: factor -(1 + 0.5j) for these parameters
    fam = xstate_to_dense(standard_family(0.5))
    rhs = master_rhs(fam, 0.0, markov_rates(1.0, 1.0), AtomParams(3.0, 2.5))
    assert rhs[1, 2] == -(1.0 + 0.5j) * fam[1, 2]
    rho = random_state(7)
    rhs = master_rhs(rho, 0.0, markov_rates(1.0, 1.0), AtomParams(3.0, 2.5))
    assert abs(rhs[1, 2] - (-(1.0 + 0.5j) * rho[1, 2])) < 1e-15


def test_unitary_limit_is_a_phase_mask():
    rho0 = random_state(3)
    traj = integrate_master(rho0, markov_rates(0.0), ATOMS, 2.0, 1e-3)
    h = 1.3 * np.array([0.5, 0.5, -0.5, -0.5]) + 0.7 * np.array([0.5, -0.5, 0.5, -0.5])
    t_end = traj.t[-1]
    want = rho0 * np.exp(-1j * (h[:, None] - h[None, :]) * t_end)
    np.testing.assert_allclose(traj.states[-1], want, atol=1e-9)
    assert traj.max_trace_drift() == 0.0


def test_markov_evolution_matches_channel():
    rho0 = random_state(5)
    traj = integrate_master(rho0, markov_rates(1.0), ATOMS, 1.0, 1e-3)
    got = to_interaction_picture(traj.states[-1], traj.phase_a[-1], traj.phase_b[-1])
    want = apply_channel(rho0, coefficients_markov(1.0, 1.0))
    assert np.max(np.abs(got - want)) < 1e-10


def test_table_rates_match_channel_with_solved_gamma():
    # resonant structured reservoir: the master equation driven by the solved
    # coefficient must reproduce the damping channel built from gamma(t)
    kernel = ExponentialKernel(1.0, 20.0, 5.0)
    sol = full_solution(kernel, 5.0, 2.0, 2e-4)
    rho0 = xstate_to_dense(standard_family(1.0))
    traj = integrate_master(rho0, table_rates(sol), AtomParams(5.0, 5.0), 2.0, 2e-4)
    got = to_interaction_picture(traj.states[-1], traj.phase_a[-1], traj.phase_b[-1])
    g = float(sol.gamma[-1])
    want = apply_channel(rho0, coefficients_from_gammas(g, g))
    assert np.max(np.abs(got - want)) < 1e-9


def test_trace_and_hermiticity_over_long_run():
    traj = integrate_master(
        xstate_to_dense(standard_family(0.7)), markov_rates(1.0), ATOMS, 10.0, 1e-3
    )
    assert traj.max_trace_drift() < 1e-10
    assert traj.max_hermiticity_defect() < 1e-12


def test_negative_rates_trip_the_positivity_guard():
    pumped = RateFunctions(f=lambda t: -1.0 + 0.0j, g=lambda t: -1.0 + 0.0j)
    rho0 = apply_channel(
        xstate_to_dense(standard_family(1.0)), coefficients_markov(1.0, 1.0)
    )
    with pytest.raises(IntegratorError):
        integrate_master(rho0, pumped, AtomParams(0.0, 0.0), 2.0, 1e-3)


def test_integrate_master_validates_input():
    bad = np.diag([0.7, 0.5, 0.0, 0.0]).astype(complex)
    with pytest.raises(ValueError):
        integrate_master(bad, markov_rates(1.0), ATOMS, 1.0, 0.1)
    one_qubit = np.diag([0.5, 0.5]).astype(complex)
    with pytest.raises(ValueError, match="two-qubit"):
        integrate_master(one_qubit, markov_rates(1.0), ATOMS, 1.0, 0.1)


def test_interaction_picture_identity_and_diagonal():
    rho = random_state(9)
    assert np.array_equal(to_interaction_picture(rho, 0.0, 0.0), rho)
    diag = np.diag([0.4, 0.3, 0.2, 0.1]).astype(complex)
    np.testing.assert_allclose(to_interaction_picture(diag, 1.3, -0.8), diag, atol=1e-15)


def test_interaction_picture_preserves_concurrence():
    traj = integrate_master(
        xstate_to_dense(standard_family(1.0)), markov_rates(1.0), ATOMS, 1.0, 1e-2
    )
    for k in (0, 50, 100):
        rotated = to_interaction_picture(
            traj.states[k], traj.phase_a[k], traj.phase_b[k]
        )
        gap = abs(concurrence(rotated).value - concurrence(traj.states[k]).value)
        assert gap < 1e-12


def test_interaction_trajectory_matches_pointwise_transform():
    traj = integrate_master(random_state(2), markov_rates(0.6), ATOMS, 1.0, 1e-2)
    rotated = interaction_trajectory(traj)
    for k in (0, 33, 100):
        want = to_interaction_picture(traj.states[k], traj.phase_a[k], traj.phase_b[k])
        np.testing.assert_allclose(rotated.states[k], want, atol=1e-14)
    assert np.array_equal(rotated.t, traj.t)


def test_local_coherence_single_atom_halves_rate():
    # atom A in (|e>+|g>)/sqrt(2), atom B in the ground state: the lowering
    # coherence decays at rate/2 while atom B never develops one
    psi = np.array([0.0, 1.0, 0.0, 1.0]) / np.sqrt(2.0)
    traj = integrate_master(pure_state(psi), markov_rates(1.0), ATOMS, 3.0, 1e-3)
    coh_a, coh_b = local_coherence_decay(traj)
    np.testing.assert_allclose(coh_a, 0.5 * np.exp(-0.5 * traj.t), atol=1e-9)
    assert np.max(coh_b) == 0.0
    np.testing.assert_allclose(coh_a / coh_a[0], np.exp(-0.5 * traj.t), atol=1e-9)


def test_local_coherence_second_atom_and_unequal_rates():
    psi = np.array([0.0, 0.0, 1.0, 1.0]) / np.sqrt(2.0)
    traj = integrate_master(pure_state(psi), markov_rates(1.0, 2.0), ATOMS, 2.0, 1e-3)
    coh_a, coh_b = local_coherence_decay(traj)
    np.testing.assert_allclose(coh_b, 0.5 * np.exp(-1.0 * traj.t), atol=1e-9)
    assert np.max(coh_a) == 0.0


def test_local_coherence_is_picture_independent():
    psi = np.array([0.0, 1.0, 0.0, 1.0]) / np.sqrt(2.0)
    traj = integrate_master(pure_state(psi), markov_rates(1.0), ATOMS, 1.0, 1e-2)
    a_lab, b_lab = local_coherence_decay(traj)
    a_int, b_int = local_coherence_decay(interaction_trajectory(traj))
    np.testing.assert_allclose(a_lab, a_int, atol=1e-13)
    np.testing.assert_allclose(b_lab, b_int, atol=1e-13)


def test_diagonal_state_never_develops_coherence():
    rho0 = np.diag([0.3, 0.3, 0.2, 0.2]).astype(complex)
    traj = integrate_master(rho0, markov_rates(1.0), ATOMS, 2.0, 1e-3)
    coh_a, coh_b = local_coherence_decay(traj)
    assert np.max(coh_a) == 0.0
    assert np.max(coh_b) == 0.0


def test_table_rates_validation():
    sol = solve_amplitude(ExponentialKernel(1.0, 5.0), 0.0, 1.0, 1e-3)
    with pytest.raises(ValueError, match="coefficient_f"):
        table_rates(sol)
    full = full_solution(ExponentialKernel(1.0, 5.0), 0.0, 1.0, 1e-3)
    with pytest.raises(ValueError, match="outside"):
        table_rates(full).f(1.5)
    with pytest.raises(ValueError, match="outside"):
        integrate_master(
            xstate_to_dense(standard_family(1.0)),
            table_rates(full),
            AtomParams(0.0, 0.0),
            2.0,
            1e-3,
        )

import numpy as np
import pytest

from esdkit.errors import ConvergenceError, SingularCoefficientError
from esdkit.memory import (
    AmplitudeSolution,
    ExponentialKernel,
    TabulatedKernel,
    coefficient_f,
    full_solution,
    gamma_identity_defect,
    gamma_of_t,
    load_kernel_table,
    solve_amplitude,
    uniform_grid,
    volterra_residual,
)


def closed_form_b(strength: float, rate: float, t: np.ndarray) -> np.ndarray:
    # resonant single-pole solution, written as a sum of two exponentials so
    # large rates cannot overflow a cosh
    d = np.sqrt(complex(rate * rate - 2.0 * strength * rate))
    return (0.5 * (1.0 + rate / d) * np.exp(-0.5 * (rate - d) * t)
            + 0.5 * (1.0 - rate / d) * np.exp(-0.5 * (rate + d) * t))


def test_exponential_kernel_values_and_validation():
    k = ExponentialKernel(strength=2.0, memory_rate=5.0, center_frequency=3.0)
    assert k.evaluate(0.0) == 5.0
    got = k.evaluate(np.array([0.0, 0.5]))
    np.testing.assert_allclose(got[1], 5.0 * np.exp(-(5.0 + 3.0j) * 0.5), atol=1e-15)
    ExponentialKernel(0.0, 1.0)  # zero coupling is legal
    with pytest.raises(ValueError):
        ExponentialKernel(-1.0, 1.0)
    with pytest.raises(ValueError):
        ExponentialKernel(1.0, 0.0)


def test_tabulated_kernel_validation():
    tau = np.linspace(0.0, 1.0, 11)
    k = TabulatedKernel(tau=tau, alpha=np.exp(-tau) + 0.0j)
    assert abs(k.step - 0.1) < 1e-15
    np.testing.assert_allclose(k.evaluate(0.05), np.exp(-0.0) * 0.5 + np.exp(-0.1) * 0.5,
                               atol=1e-12)
    with pytest.raises(ValueError):
        TabulatedKernel(tau=tau + 0.5, alpha=np.exp(-tau) + 0.0j)
    with pytest.raises(ValueError):
        TabulatedKernel(tau=np.array([0.0, 0.1, 0.3]), alpha=np.zeros(3, complex))
    with pytest.raises(ValueError):
        TabulatedKernel(tau=np.array([0.0]), alpha=np.array([1.0 + 0.0j]))
    with pytest.raises(ValueError):
        TabulatedKernel(tau=tau, alpha=np.zeros(5, complex))
    with pytest.raises(ValueError):
        k.evaluate(1.5)


def test_load_kernel_table_roundtrip(tmp_path):
    src = ExponentialKernel(1.0, 5.0, 2.0)
    tau = np.arange(201) * 0.01
    alpha = src.evaluate(tau)
    path = tmp_path / "kernel.dat"
    lines = ["# tau alpha_re alpha_im", "# single-pole sample"]
    lines += [f"{t:.17e} {a.real:.17e} {a.imag:.17e}" for t, a in zip(tau, alpha)]
    path.write_text("\n".join(lines) + "\n")
    k = load_kernel_table(path)
    np.testing.assert_allclose(k.tau, tau, atol=1e-15)
    np.testing.assert_allclose(k.alpha, alpha, atol=1e-12)

    bad = tmp_path / "two_cols.dat"
    bad.write_text("0.0 1.0\n0.1 0.9\n")
    with pytest.raises(ValueError):
        load_kernel_table(bad)


def test_uniform_grid():
    g = uniform_grid(1.0, 0.25)
    np.testing.assert_allclose(g, [0.0, 0.25, 0.5, 0.75, 1.0], atol=1e-15)
    with pytest.raises(ValueError):
        uniform_grid(1.0, 0.0)
    with pytest.raises(ValueError):
        uniform_grid(0.1, 0.25)
    with pytest.raises(ValueError):
        uniform_grid(1.0, 0.3)


def test_free_evolution_is_a_pure_phase():
    sol = solve_amplitude(ExponentialKernel(0.0, 1.0), 2.0, 3.0, 1e-3)
    assert sol.b[0] == 1.0
    np.testing.assert_allclose(sol.b, np.exp(-2.0j * sol.t), atol=5e-9)
    np.testing.assert_allclose(np.abs(sol.b), 1.0, atol=5e-9)


def test_resonant_closed_form():
    for rate, dt, tol in ((5.0, 1e-3, 1e-8), (100.0, 1e-4, 1e-9), (1000.0, 1e-5, 1e-9)):
        t_max = min(3.0, 3000.0 * dt)
        sol = solve_amplitude(ExponentialKernel(1.0, rate), 0.0, t_max, dt)
        want = closed_form_b(1.0, rate, sol.t)
        assert np.max(np.abs(sol.b - want)) < tol


def test_markov_limit_amplitude():
    # memory 100x faster than decay: |b| within 2% of exp(-t/2) everywhere
    sol = solve_amplitude(ExponentialKernel(1.0, 100.0), 0.0, 3.0, 1e-4)
    rel = np.abs(np.abs(sol.b) / np.exp(-0.5 * sol.t) - 1.0)
    assert np.max(rel) < 0.02


def test_decay_rate_approaches_markov():
    # after a few memory times the local rate settles at strength/2 (1% here)
    rate = 1000.0
    sol = coefficient_f(solve_amplitude(ExponentialKernel(1.0, rate), 0.0, 0.02, 1e-5))
    late = sol.t >= 5.0 / rate
    rel = np.abs(sol.f.real[late] / 0.5 - 1.0)
    assert np.max(rel) < 0.01


def test_off_resonant_frequency_shift():
    # detuned reservoir: Im f settles at the slow root of s^2 + (rate - i*delta)s
    # + strength*rate/2; the weak-coupling formula is only leading order
    rate, strength, w_atom, w_center = 100.0, 1.0, 2.0, -48.0
    delta = w_atom - w_center
    sol = full_solution(ExponentialKernel(strength, rate, w_center), w_atom, 3.0, 1e-4)
    roots = np.roots([1.0, rate - 1j * delta, 0.5 * strength * rate])
    slow = roots[np.argmin(np.abs(roots))]
    formula = 0.5 * strength * rate * delta / (rate * rate + delta * delta)
    assert abs(sol.f.imag[-1] - (-slow.imag)) < 1e-5
    assert abs(sol.f.imag[-1] / formula - 1.0) < 0.03


def test_step_halving_order():
    # fixed-step RK4 on the linear pair: global error drops 16x per halving
    errs = []
    for dt in (0.02, 0.01, 0.005):
        sol = solve_amplitude(ExponentialKernel(1.0, 5.0), 0.0, 2.0, dt, tol=np.inf)
        errs.append(np.max(np.abs(sol.b - closed_form_b(1.0, 5.0, sol.t))))
    order = np.log2(errs[0] / errs[1])
    assert order > 3.5
    assert np.log2(errs[1] / errs[2]) > 3.5


def test_repeat_solves_are_identical():
    a = solve_amplitude(ExponentialKernel(1.0, 10.0, 0.5), 1.5, 2.0, 1e-3)
    b = solve_amplitude(ExponentialKernel(1.0, 10.0, 0.5), 1.5, 2.0, 1e-3)
    assert np.array_equal(a.b, b.b)


def test_tabulated_matches_exponential():
    exp_kernel = ExponentialKernel(1.0, 5.0)
    tau = np.arange(2001) * 1e-3
    tab_kernel = TabulatedKernel(tau=tau, alpha=exp_kernel.evaluate(tau))
    se = solve_amplitude(exp_kernel, 1.0, 2.0, 1e-3)
    st = solve_amplitude(tab_kernel, 1.0, 2.0, 1e-3, tol=np.inf)
    assert np.max(np.abs(se.b - st.b)) < 1e-5
    assert np.max(volterra_residual(st, tab_kernel)) < 2e-5


def test_tabulated_requires_coverage():
    tau = np.arange(101) * 0.01
    k = TabulatedKernel(tau=tau, alpha=np.exp(-5.0 * tau) + 0.0j)
    with pytest.raises(ValueError, match="covers tau"):
        solve_amplitude(k, 0.0, 2.0, 0.01, tol=np.inf)


def test_tabulated_unphysical_growth_warns():
    tau = np.arange(201) * 0.01
    k = TabulatedKernel(tau=tau, alpha=-0.5 * np.exp(-tau) + 0.0j)
    with pytest.warns(RuntimeWarning, match="unphysical"):
        solve_amplitude(k, 0.0, 2.0, 0.01, tol=np.inf)


def test_volterra_residual_is_second_order():
    maxima = []
    for dt in (0.01, 0.005):
        sol = solve_amplitude(ExponentialKernel(1.0, 5.0), 0.0, 2.0, dt, tol=np.inf)
        maxima.append(np.max(volterra_residual(sol, ExponentialKernel(1.0, 5.0))))
    ratio = maxima[0] / maxima[1]
    assert 3.0 < ratio < 5.0


def test_gamma_identity():
    sol = full_solution(ExponentialKernel(1.0, 10.0), 0.0, 3.0, 5e-4)
    assert sol.gamma[0] == 1.0
    assert gamma_identity_defect(sol) < 1e-6


def test_gamma_without_coupling_is_one():
    sol = full_solution(ExponentialKernel(0.0, 1.0), 1.0, 2.0, 1e-3)
    np.testing.assert_allclose(sol.gamma, 1.0, atol=1e-9)
    # Im f carries the omega^3 dt^2 / 6 centered-difference residue, Re f does not
    np.testing.assert_allclose(sol.f.real, 0.0, atol=1e-9)
    np.testing.assert_allclose(sol.f.imag, 0.0, atol=1e-6)


def test_pipeline_order_is_enforced():
    sol = solve_amplitude(ExponentialKernel(1.0, 5.0), 0.0, 1.0, 1e-3)
    with pytest.raises(ValueError):
        gamma_of_t(sol)
    with pytest.raises(ValueError):
        gamma_identity_defect(coefficient_f(sol))


def test_singular_coefficient_in_strong_coupling():
    # memory as slow as the decay: b crosses zero near t = 3*pi/2
    sol = solve_amplitude(ExponentialKernel(1.0, 1.0), 0.0, 6.0, 1e-5)
    with pytest.raises(SingularCoefficientError, match="4.712"):
        coefficient_f(sol)


def test_negative_decay_rate_warns_in_strong_coupling():
    sol = solve_amplitude(ExponentialKernel(1.0, 1.0), 0.0, 6.0, 1e-4)
    with pytest.warns(RuntimeWarning, match="negative real part"):
        coefficient_f(sol, b_floor=1e-9)


def test_unstable_step_raises():
    with pytest.raises(ConvergenceError, match="stage amplification"):
        solve_amplitude(ExponentialKernel(1.0, 10.0), 0.0, 3.0, 0.3)


def test_halving_gate_raises_on_coarse_phase():
    with pytest.raises(ConvergenceError, match="halving"):
        solve_amplitude(ExponentialKernel(1.0, 5.0), 50.0, 2.0, 0.01)


def test_unsupported_kernel_type():
    with pytest.raises(ValueError, match="unsupported kernel"):
        solve_amplitude(3.14, 0.0, 1.0, 0.1)


def test_solution_grid_properties():
    sol = solve_amplitude(ExponentialKernel(1.0, 5.0), 0.0, 1.0, 0.01)
    assert sol.dt == 0.01
    assert sol.t.size == 101
    assert isinstance(sol, AmplitudeSolution)

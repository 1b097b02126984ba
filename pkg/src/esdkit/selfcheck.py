"""Fast invariant suites behind the check subcommand.

Each check is a seeded, deterministic subset of the module invariants; the
exhaustive versions live in the test suite.  A check either passes or carries
a short failure detail.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import (
    ExponentialKernel,
    apply_channel,
    assert_density_matrix,
    check_bound,
    coefficients_from_gammas,
    coefficients_markov,
    completeness_defect,
    concurrence,
    concurrence_markov,
    concurrence_x,
    dagger,
    dense_to_xstate,
    disentanglement_time,
    disentanglement_time_exact,
    full_solution,
    gamma_identity_defect,
    hermitian_eigen,
    integrate_master,
    interaction_trajectory,
    kron,
    markov_rates,
    partial_trace,
    psd_sqrt,
    pure_state,
    random_state,
    random_xstate,
    solve_amplitude,
    standard_family,
    uniform_grid,
    volterra_residual,
    xstate_to_dense,
)
from .channel import build_kraus
from .master import AtomParams


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (g + dagger(g))


def _random_local_unitary(seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    blocks = []
    for _ in range(2):
        w, v = np.linalg.eigh(_random_hermitian(rng, 2))
        blocks.append(v @ np.diag(np.exp(1j * w)) @ dagger(v))
    return kron(blocks[0], blocks[1])


def check_linalg_eigen() -> tuple[bool, str]:
    worst = 0.0
    for seed in range(20):
        rng = np.random.default_rng(seed)
        for dim in (2, 4):
            h = _random_hermitian(rng, dim)
            w, v = hermitian_eigen(h)
            worst = max(worst, float(np.max(np.abs((v * w) @ dagger(v) - h))))
    return worst < 1e-12, f"max reconstruction defect {worst:.2e}"


def check_linalg_sqrt() -> tuple[bool, str]:
    worst = 0.0
    for seed in range(20):
        rho = random_state(seed)
        s = psd_sqrt(rho)
        worst = max(worst, float(np.max(np.abs(s @ s - rho))))
    return worst < 1e-12, f"max square-back defect {worst:.2e}"


def check_linalg_kron() -> tuple[bool, str]:
    worst = 0.0
    for seed in range(20):
        rng = np.random.default_rng(seed)
        a, b, c, d = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
                      for _ in range(4))
        worst = max(worst, float(np.max(np.abs(kron(a, b) @ kron(c, d) - kron(a @ c, b @ d)))))
    return worst < 1e-12, f"max mixed-product defect {worst:.2e}"


def check_states_family() -> tuple[bool, str]:
    for a in np.linspace(0.0, 1.0, 21):
        rho = xstate_to_dense(standard_family(float(a)))
        assert_density_matrix(rho)
    return True, "family valid on a grid of 21 points"


def check_states_roundtrip() -> tuple[bool, str]:
    worst = 0.0
    for seed in range(50):
        x = random_xstate(seed)
        back = dense_to_xstate(xstate_to_dense(x))
        worst = max(
            worst,
            abs(back.p1 - x.p1), abs(back.p2 - x.p2), abs(back.p3 - x.p3),
            abs(back.p4 - x.p4), abs(back.z23 - x.z23), abs(back.z14 - x.z14),
        )
    return worst < 1e-14, f"max round-trip defect {worst:.2e}"


def check_states_partial_trace() -> tuple[bool, str]:
    worst = 0.0
    for seed in range(20):
        ra = random_state(seed, dim=2)
        rb = random_state(seed + 1000, dim=2)
        prod = np.kron(ra, rb)
        worst = max(worst, float(np.max(np.abs(partial_trace(prod, "A") - ra))))
        worst = max(worst, float(np.max(np.abs(partial_trace(prod, "B") - rb))))
    return worst < 1e-12, f"max factorization defect {worst:.2e}"


def check_channel_completeness() -> tuple[bool, str]:
    worst = 0.0
    rng = np.random.default_rng(7)
    for _ in range(100):
        ga, gb = rng.uniform(0.0, 1.0, size=2)
        worst = max(worst, completeness_defect(build_kraus(coefficients_from_gammas(ga, gb))))
    return worst < 1e-12, f"max completeness defect {worst:.2e}"


def check_channel_preserves_states() -> tuple[bool, str]:
    rng = np.random.default_rng(11)
    for seed in range(50):
        ga, gb = rng.uniform(0.0, 1.0, size=2)
        out = apply_channel(random_state(seed), coefficients_from_gammas(ga, gb))
        assert_density_matrix(out)
    return True, "50 random states stay valid"


def check_channel_semigroup() -> tuple[bool, str]:
    worst = 0.0
    for seed in range(20):
        rho = random_state(seed)
        one = apply_channel(apply_channel(rho, coefficients_markov(1.0, 0.4)),
                            coefficients_markov(1.0, 0.9))
        two = apply_channel(rho, coefficients_markov(1.0, 1.3))
        worst = max(worst, float(np.max(np.abs(one - two))))
    return worst < 1e-12, f"max composition defect {worst:.2e}"


def check_channel_x_shape() -> tuple[bool, str]:
    for seed in range(50):
        x = random_xstate(seed)
        dense_to_xstate(apply_channel(xstate_to_dense(x), coefficients_markov(1.0, 0.7)))
    return True, "X shape survives the channel for 50 random X states"


def check_concurrence_anchors() -> tuple[bool, str]:
    bell = pure_state(np.array([0.0, 1.0, 1.0, 0.0]) / np.sqrt(2.0))
    c_bell = concurrence(bell).value
    prod = pure_state(np.array([1.0, 0.0, 0.0, 0.0]))
    c_prod = concurrence(prod).value
    ok = abs(c_bell - 1.0) < 1e-12 and c_prod == 0.0
    return ok, f"bell {c_bell!r}, product {c_prod!r}"


def check_concurrence_x_agreement() -> tuple[bool, str]:
    worst = 0.0
    for seed in range(200):
        x = random_xstate(seed)
        worst = max(worst, abs(concurrence(xstate_to_dense(x)).value - concurrence_x(x)))
    return worst < 1e-10, f"max closed-form gap {worst:.2e}"


def check_concurrence_local_unitary() -> tuple[bool, str]:
    worst = 0.0
    for seed in range(50):
        rho = random_state(seed)
        u = _random_local_unitary(seed)
        worst = max(worst, abs(concurrence(u @ rho @ dagger(u)).value - concurrence(rho).value))
    return worst < 1e-9, f"max invariance defect {worst:.2e}"


def check_bound_random() -> tuple[bool, str]:
    worst_gap = -np.inf
    for seed in range(200):
        rho = random_state(seed)
        for g in (0.9, 0.5, 0.1):
            rep = check_bound(rho, coefficients_from_gammas(g, g))
            worst_gap = max(worst_gap, rep.lhs - rep.rhs)
            if not rep.satisfied:
                return False, f"violated at seed {seed}, gamma {g}: gap {rep.lhs - rep.rhs:.2e}"
    return True, f"worst lhs-rhs gap {worst_gap:.2e}"


def check_memory_free() -> tuple[bool, str]:
    sol = solve_amplitude(ExponentialKernel(0.0, 5.0), 2.0, 3.0, 1e-3)
    worst = float(np.max(np.abs(np.abs(sol.b) - 1.0)))
    return worst < 1e-12, f"max | |b|-1 | = {worst:.2e}"


def check_memory_markov_limit() -> tuple[bool, str]:
    sol = full_solution(ExponentialKernel(1.0, 100.0), 1.0, 3.0, 5e-5)
    worst = float(np.max(np.abs(sol.gamma - np.exp(-0.5 * sol.t))))
    return worst < 0.02, f"sup deviation from Markov decay {worst:.2e}"


def check_memory_gamma_identity() -> tuple[bool, str]:
    sol = full_solution(ExponentialKernel(1.0, 20.0), 1.0, 3.0, 2e-4)
    defect = gamma_identity_defect(sol)
    return defect < 1e-6, f"gamma vs |b| defect {defect:.2e}"


def check_memory_residual_order() -> tuple[bool, str]:
    kernel = ExponentialKernel(1.0, 5.0)
    res = []
    for dt in (4e-3, 2e-3):
        sol = solve_amplitude(kernel, 1.0, 2.0, dt, tol=np.inf)
        res.append(float(np.max(volterra_residual(sol, kernel))))
    ratio = res[0] / res[1]
    return ratio > 3.5, f"residual ratio under halving {ratio:.2f}"


def check_master_conservation() -> tuple[bool, str]:
    rho0 = xstate_to_dense(standard_family(1.0))
    traj = integrate_master(rho0, markov_rates(1.0), AtomParams(1.0, 1.0), 5.0, 1e-3)
    drift = max(traj.max_trace_drift(), traj.max_hermiticity_defect())
    return drift < 1e-10, f"max trace/hermiticity drift {drift:.2e}"


def check_master_matches_channel() -> tuple[bool, str]:
    rho0 = xstate_to_dense(standard_family(1.0))
    traj = interaction_trajectory(
        integrate_master(rho0, markov_rates(1.0), AtomParams(1.0, 1.0), 1.0, 1e-3)
    )
    worst = 0.0
    for i in range(0, traj.t.size, 100):
        ref = apply_channel(rho0, coefficients_markov(1.0, float(traj.t[i])))
        worst = max(worst, float(np.max(np.abs(traj.states[i] - ref))))
    return worst < 1e-8, f"max rotating-frame gap to the channel {worst:.2e}"


def check_master_unitary_limit() -> tuple[bool, str]:
    rho0 = random_state(3)
    traj = integrate_master(rho0, markov_rates(0.0), AtomParams(1.3, 0.7), 2.0, 1e-3)
    purity = np.einsum("tij,tji->t", traj.states, traj.states).real
    worst = float(np.max(np.abs(purity - purity[0])))
    return worst < 1e-9, f"purity drift {worst:.2e}"


def check_esd_paths_agree() -> tuple[bool, str]:
    worst = 0.0
    for a in np.linspace(0.35, 1.0, 14):
        t_bis = disentanglement_time(float(a), 1.0).t_d
        t_exact = disentanglement_time_exact(float(a), 1.0).t_d
        worst = max(worst, abs(t_bis - t_exact))
    return worst < 1e-9, f"max bisection-vs-closed-form gap {worst:.2e}"


def check_esd_zero_stays_zero() -> tuple[bool, str]:
    t_d = disentanglement_time_exact(1.0, 1.0).t_d
    values = [concurrence_markov(1.0, 1.0, t) for t in np.linspace(t_d * (1 + 1e-12), 5.0, 40)]
    worst = max(values)
    return worst == 0.0, f"max concurrence past death {worst!r}"


def check_esd_threshold() -> tuple[bool, str]:
    for a in (0.2, 0.32, 1.0 / 3.0):
        if disentanglement_time_exact(a, 1.0).kind != "asymptotic":
            return False, f"a={a} misclassified as finite"
    for a in (0.35, 0.5, 1.0):
        if disentanglement_time_exact(a, 1.0).kind != "finite":
            return False, f"a={a} misclassified as asymptotic"
    return True, "threshold sits above one third"


_CHECKS: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("linalg: eigendecomposition reconstructs Hermitian inputs", check_linalg_eigen),
    ("linalg: psd_sqrt squares back to the input", check_linalg_sqrt),
    ("linalg: kron satisfies the mixed-product identity", check_linalg_kron),
    ("states: standard family is a valid state for all a", check_states_family),
    ("states: X round trip is lossless", check_states_roundtrip),
    ("states: partial trace factorizes product states", check_states_partial_trace),
    ("channel: Kraus completeness holds", check_channel_completeness),
    ("channel: output states stay valid", check_channel_preserves_states),
    ("channel: Markov damping composes as a semigroup", check_channel_semigroup),
    ("channel: X shape is preserved", check_channel_x_shape),
    ("entanglement: Bell gives 1 and product states give 0", check_concurrence_anchors),
    ("entanglement: Hermitian route matches the X closed form", check_concurrence_x_agreement),
    ("entanglement: concurrence is local-unitary invariant", check_concurrence_local_unitary),
    ("entanglement: decay bound holds on random states", check_bound_random),
    ("memory: zero coupling keeps |b| = 1", check_memory_free),
    ("memory: broad kernel approaches the Markov law", check_memory_markov_limit),
    ("memory: gamma equals |b|", check_memory_gamma_identity),
    ("memory: residual diagnostic converges at second order", check_memory_residual_order),
    ("master: trace and Hermiticity are conserved", check_master_conservation),
    ("master: Markov evolution matches the channel", check_master_matches_channel),
    ("master: zero rates preserve purity", check_master_unitary_limit),
    ("esd: bisection agrees with the closed form", check_esd_paths_agree),
    ("esd: concurrence stays exactly zero past death", check_esd_zero_stays_zero),
    ("esd: finite death starts above one third", check_esd_threshold),
]


def run_all() -> list[CheckResult]:
    results = []
    for name, fn in _CHECKS:
        try:
            passed, detail = fn()
        except Exception as exc:  # a crashed check is a failed check
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(name=name, passed=passed, detail=detail))
    return results

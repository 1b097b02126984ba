"""Time-convolutionless master equation for two independently damped atoms.

    drho/dt = -i[H', rho]
              + Re F(t) (2 s-_A rho s+_A - n_A rho - rho n_A)
              + Re G(t) (2 s-_B rho s+_B - n_B rho - rho n_B)

with H' = (omega_A + Im F)/2 * sz_A + (omega_B + Im G)/2 * sz_B.  H' is
diagonal in the product basis, so the commutator is a phase mask.  The
interaction picture strips the accumulated H' phases; in that frame the
Markov-rate evolution coincides with the damping channel exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import IntegratorError
from .linalg import I2, SIGMA_MINUS, dagger, kron
from .memory import AmplitudeSolution, uniform_grid
from .states import assert_density_matrix

POSITIVITY_FLOOR = -1e-8

_DIAG_A = np.array([0.5, 0.5, -0.5, -0.5])
_DIAG_B = np.array([0.5, -0.5, 0.5, -0.5])
_SM_A = kron(SIGMA_MINUS, I2)
_SM_B = kron(I2, SIGMA_MINUS)
_SP_A = dagger(_SM_A)
_SP_B = dagger(_SM_B)
_N_A = _SP_A @ _SM_A
_N_B = _SP_B @ _SM_B


@dataclass(frozen=True)
class AtomParams:
    """Bare transition frequencies of the two atoms."""

    omega_a: float
    omega_b: float


@dataclass(frozen=True)
class RateFunctions:
    """Complex time-local rates for the two atoms: real part damps, imaginary
    part shifts the transition frequency."""

    f: Callable[[float], complex]
    g: Callable[[float], complex]


def markov_rates(rate_a: float, rate_b: float | None = None) -> RateFunctions:
    """Constant rates rate/2: the memoryless limit of the kernel coefficient."""
    if rate_b is None:
        rate_b = rate_a
    if rate_a < 0.0 or rate_b < 0.0:
        raise ValueError(f"negative damping rate in ({rate_a}, {rate_b})")
    fa = 0.5 * rate_a + 0.0j
    fb = 0.5 * rate_b + 0.0j
    return RateFunctions(f=lambda t: fa, g=lambda t: fb)


def table_rates(
    sol_a: AmplitudeSolution, sol_b: AmplitudeSolution | None = None
) -> RateFunctions:
    """Rates interpolated from solved amplitude coefficients.

    Atom B reuses atom A's solution when sol_b is omitted.  Evaluation
    outside the solved window raises ValueError.
    """
    if sol_b is None:
        sol_b = sol_a

    def make(sol: AmplitudeSolution) -> Callable[[float], complex]:
        if sol.f is None:
            raise ValueError("coefficient_f must run before table_rates")
        t, fre, fim = sol.t, np.ascontiguousarray(sol.f.real), np.ascontiguousarray(sol.f.imag)
        t_end = float(t[-1])

        def rate(x: float) -> complex:
            if x < -1e-12 or x > t_end + 1e-9:
                raise ValueError(f"rate requested at t={x:.6g} outside [0, {t_end:.6g}]")
            return complex(np.interp(x, t, fre), np.interp(x, t, fim))

        return rate

    return RateFunctions(f=make(sol_a), g=make(sol_b))


def master_rhs(
    rho: np.ndarray, t: float, rates: RateFunctions, atoms: AtomParams
) -> np.ndarray:
    """Right-hand side of the master equation at time t."""
    fv = complex(rates.f(t))
    gv = complex(rates.g(t))
    hvec = (atoms.omega_a + fv.imag) * _DIAG_A + (atoms.omega_b + gv.imag) * _DIAG_B
    out = -1j * (hvec[:, None] - hvec[None, :]) * rho
    out += fv.real * (2.0 * (_SM_A @ rho @ _SP_A) - _N_A @ rho - rho @ _N_A)
    out += gv.real * (2.0 * (_SM_B @ rho @ _SP_B) - _N_B @ rho - rho @ _N_B)
    return out


@dataclass(frozen=True)
class Trajectory:
    """States on the integration grid plus the accumulated H' phases
    (phase_a(t) = integral of omega_A + Im F, likewise for B)."""

    t: np.ndarray
    states: np.ndarray
    phase_a: np.ndarray
    phase_b: np.ndarray

    def max_trace_drift(self) -> float:
        traces = np.einsum("tii->t", self.states)
        return float(np.max(np.abs(traces - 1.0)))

    def max_hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.states - self.states.conj().transpose(0, 2, 1))))


def _herm(rho: np.ndarray) -> np.ndarray:
    return 0.5 * (rho + rho.conj().T)


def integrate_master(
    rho0: np.ndarray,
    rates: RateFunctions,
    atoms: AtomParams,
    t_max: float,
    dt: float,
) -> Trajectory:
    """Fixed-step RK4 integration, storing every step.

    Each stage argument is re-Hermitianized, which keeps the Hermiticity
    defect at round-off without touching the physics.  After the run the
    stored states are checked for positivity; an eigenvalue below -1e-8
    raises IntegratorError.
    """
    rho = assert_density_matrix(rho0)
    if rho.shape != (4, 4):
        raise ValueError("master integration expects a two-qubit (4x4) state")
    grid = uniform_grid(t_max, dt)
    n = grid.size - 1
    states = np.empty((n + 1, 4, 4), dtype=complex)
    phase_a = np.empty(n + 1)
    phase_b = np.empty(n + 1)
    states[0] = rho
    phase_a[0] = 0.0
    phase_b[0] = 0.0

    def nu(t: float) -> tuple[float, float]:
        return (
            atoms.omega_a + complex(rates.f(t)).imag,
            atoms.omega_b + complex(rates.g(t)).imag,
        )

    half = 0.5 * dt
    nu_a_left, nu_b_left = nu(0.0)
    for i in range(n):
        t = grid[i]
        k1 = master_rhs(rho, t, rates, atoms)
        k2 = master_rhs(_herm(rho + half * k1), t + half, rates, atoms)
        k3 = master_rhs(_herm(rho + half * k2), t + half, rates, atoms)
        k4 = master_rhs(_herm(rho + dt * k3), t + dt, rates, atoms)
        rho = _herm(rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
        states[i + 1] = rho
        nu_a_right, nu_b_right = nu(float(grid[i + 1]))
        phase_a[i + 1] = phase_a[i] + half * (nu_a_left + nu_a_right)
        phase_b[i + 1] = phase_b[i] + half * (nu_b_left + nu_b_right)
        nu_a_left, nu_b_left = nu_a_right, nu_b_right

    min_eig = float(np.min(np.linalg.eigvalsh(states)))
    if min_eig < POSITIVITY_FLOOR:
        raise IntegratorError(
            f"integration produced eigenvalue {min_eig:.3e} < {POSITIVITY_FLOOR:.1e}"
        )
    return Trajectory(t=grid, states=states, phase_a=phase_a, phase_b=phase_b)


def to_interaction_picture(
    rho: np.ndarray, phase_a: float, phase_b: float
) -> np.ndarray:
    """Strip the accumulated H' phases from one state: U rho U^dagger with
    U = exp(+i (phase_a diag_A + phase_b diag_B))."""
    rho = np.asarray(rho, dtype=complex)
    u = np.exp(1j * (phase_a * _DIAG_A + phase_b * _DIAG_B))
    return u[:, None] * rho * u.conj()[None, :]


def interaction_trajectory(traj: Trajectory) -> Trajectory:
    """Whole trajectory in the interaction picture (phases kept for reference)."""
    u = np.exp(
        1j * (traj.phase_a[:, None] * _DIAG_A[None, :]
              + traj.phase_b[:, None] * _DIAG_B[None, :])
    )
    states = u[:, :, None] * traj.states * u.conj()[:, None, :]
    return Trajectory(t=traj.t, states=states, phase_a=traj.phase_a, phase_b=traj.phase_b)


def local_coherence_decay(traj: Trajectory) -> tuple[np.ndarray, np.ndarray]:
    """Magnitudes of the single-atom lowering coherences |<s-_A>|, |<s-_B>|
    along the trajectory (picture-independent)."""
    a = np.abs(np.einsum("tij,ji->t", traj.states, _SM_A))
    b = np.abs(np.einsum("tij,ji->t", traj.states, _SM_B))
    return a, b

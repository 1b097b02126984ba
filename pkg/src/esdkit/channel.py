"""Amplitude-damping channel for two independently damped qubits.

Each atom carries a residual amplitude gamma and a transfer amplitude
omega = sqrt(1 - gamma^2); the two-qubit channel is the four-operator Kraus
set built from diag(gamma, 1) and omega times the lowering operator.  The
Markov special case is gamma = exp(-rate*t/2); time-dependent gammas from a
memory kernel plug into the same constructors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import I4, SIGMA_MINUS, dagger, kron
from .states import assert_density_matrix

COMPLETENESS_TOL = 1e-12


@dataclass(frozen=True)
class DampingCoefficients:
    """Per-atom residual (gamma) and transfer (omega) amplitudes.

    Each pair must sit on the unit circle: gamma^2 + omega^2 = 1 within 1e-12,
    with both entries in [0, 1].
    """

    gamma_a: float
    gamma_b: float
    omega_a: float
    omega_b: float

    def __post_init__(self) -> None:
        for name, gamma, omega in (
            ("A", self.gamma_a, self.omega_a),
            ("B", self.gamma_b, self.omega_b),
        ):
            if not (0.0 <= gamma <= 1.0 and 0.0 <= omega <= 1.0):
                raise ValueError(f"atom {name}: amplitudes must lie in [0, 1]")
            if abs(gamma * gamma + omega * omega - 1.0) > 1e-12:
                raise ValueError(
                    f"atom {name}: gamma^2 + omega^2 = "
                    f"{gamma * gamma + omega * omega:.15g}, expected 1"
                )


def coefficients_from_gammas(gamma_a: float, gamma_b: float) -> DampingCoefficients:
    """Coefficients with omegas filled in from the unit-circle constraint."""
    for name, g in (("A", gamma_a), ("B", gamma_b)):
        if not 0.0 <= g <= 1.0:
            raise ValueError(f"atom {name}: gamma={g} outside [0, 1]")
    return DampingCoefficients(
        gamma_a, gamma_b,
        float(np.sqrt(1.0 - gamma_a * gamma_a)),
        float(np.sqrt(1.0 - gamma_b * gamma_b)),
    )


def coefficients_markov(rate: float, t: float) -> DampingCoefficients:
    """Markov damping at a common rate: gamma = exp(-rate*t/2)."""
    if rate < 0.0:
        raise ValueError(f"negative rate {rate}")
    if t < 0.0:
        raise ValueError(f"negative time {t}")
    g = float(np.exp(-0.5 * rate * t))
    return coefficients_from_gammas(g, g)


def build_kraus(c: DampingCoefficients) -> list[np.ndarray]:
    """The four Kraus operators, residual-residual first.

    Order: (keep A, keep B), (keep A, decay B), (decay A, keep B),
    (decay A, decay B).
    """
    keep_a = np.diag([c.gamma_a, 1.0]).astype(complex)
    keep_b = np.diag([c.gamma_b, 1.0]).astype(complex)
    drop_a = c.omega_a * SIGMA_MINUS
    drop_b = c.omega_b * SIGMA_MINUS
    return [
        kron(keep_a, keep_b),
        kron(keep_a, drop_b),
        kron(drop_a, keep_b),
        kron(drop_a, drop_b),
    ]


def completeness_defect(kraus: list[np.ndarray]) -> float:
    """Largest entrywise deviation of sum(K^dagger K) from the identity."""
    acc = sum(dagger(k) @ k for k in kraus)
    return float(np.max(np.abs(acc - I4)))


def apply_channel(rho: np.ndarray, c: DampingCoefficients) -> np.ndarray:
    """Apply the two-atom damping channel: sum_mu K_mu rho K_mu^dagger."""
    rho = assert_density_matrix(rho)
    out = np.zeros((4, 4), dtype=complex)
    for k in build_kraus(c):
        out += k @ rho @ dagger(k)
    return out


def kraus_term(rho: np.ndarray, c: DampingCoefficients, mu: int) -> np.ndarray:
    """Single unnormalized Kraus branch K_mu rho K_mu^dagger, mu in 1..4."""
    if mu not in (1, 2, 3, 4):
        raise ValueError(f"mu must be 1..4, got {mu}")
    rho = assert_density_matrix(rho)
    k = build_kraus(c)[mu - 1]
    return k @ rho @ dagger(k)

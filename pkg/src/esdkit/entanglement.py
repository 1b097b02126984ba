"""Concurrence and the damping decay bound.

The concurrence is computed from the Hermitian product sqrt(rho) * flipped *
sqrt(rho) (isospectral to the usual non-Hermitian product, but keeps every
eigenproblem Hermitian).  Inputs may be unnormalized: the measure is
homogeneous of degree one in rho, which is what makes the per-branch bound
checks meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import DampingCoefficients, apply_channel, kraus_term
from .linalg import SIGMA_Y, dagger, hermiticity_defect, kron, psd_sqrt
from .states import XState

# Eigenvalues of the Hermitian product below this fraction of the largest are
# zeroed before the square root; otherwise sqrt of round-off dust (~1e-16)
# pollutes exact cases at the 1e-8 level.
RELATIVE_EIG_FLOOR = 1e-13

_FLIP = kron(SIGMA_Y, SIGMA_Y).real  # anti-diagonal (-1, 1, 1, -1), real


@dataclass(frozen=True)
class ConcurrenceResult:
    """Concurrence value plus the four square-rooted eigenvalues, descending."""

    value: float
    roots: tuple[float, float, float, float]


def spin_flipped(rho: np.ndarray) -> np.ndarray:
    """The flipped matrix (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y)."""
    rho = np.asarray(rho, dtype=complex)
    return _FLIP @ rho.conj() @ _FLIP


def concurrence(
    rho: np.ndarray,
    herm_tol: float = 1e-10,
    eig_floor: float = 1e-9,
) -> ConcurrenceResult:
    """Concurrence of a (possibly unnormalized) PSD 4x4 matrix.

    Validates Hermiticity to herm_tol and positivity down to -eig_floor,
    then takes max(0, r1 - r2 - r3 - r4) over the descending square roots of
    the eigenvalues of sqrt(rho) flipped(rho) sqrt(rho).
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected 4x4, got {rho.shape}")
    defect = hermiticity_defect(rho)
    if defect > herm_tol:
        raise ValueError(f"input is not Hermitian: defect {defect:.3e}")
    rho = 0.5 * (rho + dagger(rho))
    w = np.linalg.eigvalsh(rho)
    if w[0] < -eig_floor:
        raise ValueError(f"input is not PSD: min eigenvalue {w[0]:.3e}")
    s = psd_sqrt(rho, tol=herm_tol)
    m = s @ spin_flipped(rho) @ s
    m = 0.5 * (m + dagger(m))
    lam = np.linalg.eigvalsh(m)
    floor = RELATIVE_EIG_FLOOR * max(float(lam[-1]), 0.0)
    lam = np.where(lam < floor, 0.0, lam)
    roots = np.sqrt(lam)[::-1]
    value = max(0.0, float(roots[0] - roots[1] - roots[2] - roots[3]))
    return ConcurrenceResult(value, tuple(float(r) for r in roots))


def concurrence_x(x: XState) -> float:
    """Closed-form concurrence of an X state:
    2 max(0, |z23| - sqrt(p1 p4), |z14| - sqrt(p2 p3))."""
    inner = abs(x.z23) - math.sqrt(x.p1 * x.p4)
    outer = abs(x.z14) - math.sqrt(x.p2 * x.p3)
    return 2.0 * max(0.0, inner, outer)


def decay_bound(c0: float, exponent: float) -> float:
    """Upper bound c0 * exp(-exponent) for the concurrence after damping.

    exponent is the accumulated decay integral (for Markov damping at rate
    Gamma it equals Gamma*t); it must be nonnegative, and c0 must be a valid
    concurrence in [0, 1].
    """
    if not 0.0 <= c0 <= 1.0 + 1e-12:
        raise ValueError(f"c0={c0} is not a concurrence value")
    if exponent < 0.0:
        raise ValueError(f"negative decay exponent {exponent}")
    return c0 * math.exp(-exponent) if math.isfinite(exponent) else 0.0


@dataclass(frozen=True)
class BoundReport:
    """Outcome of a decay-bound check on one state.

    first_branch_gap is |C(K1 rho K1^dag) - e^{-exponent} C(rho)|, which the
    channel structure forces to zero; side_branch_max is the largest
    concurrence among the three decay branches, also structurally zero.
    """

    initial: float
    lhs: float
    rhs: float
    satisfied: bool
    first_branch_gap: float
    side_branch_max: float


def check_bound(
    rho0: np.ndarray,
    c: DampingCoefficients,
    exponent: float | None = None,
    slack: float = 1e-10,
) -> BoundReport:
    """Evaluate the decay bound on one state and channel.

    When exponent is omitted it is taken as -log(gamma_a * gamma_b), the
    value consistent with the supplied coefficients.
    """
    if exponent is None:
        prod = c.gamma_a * c.gamma_b
        exponent = math.inf if prod == 0.0 else -math.log(prod)
    c0 = concurrence(rho0).value
    lhs = concurrence(apply_channel(rho0, c)).value
    rhs = decay_bound(min(c0, 1.0), exponent)
    factor = math.exp(-exponent) if math.isfinite(exponent) else 0.0
    first_gap = abs(concurrence(kraus_term(rho0, c, 1)).value - factor * c0)
    side_max = max(
        concurrence(kraus_term(rho0, c, mu)).value for mu in (2, 3, 4)
    )
    return BoundReport(
        initial=c0,
        lhs=lhs,
        rhs=rhs,
        satisfied=bool(lhs <= rhs + slack),
        first_branch_gap=first_gap,
        side_branch_max=side_max,
    )

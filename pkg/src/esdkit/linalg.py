"""Dense complex linear algebra for 2x2 and 4x4 operators.

Everything in the package lives in dimension 2 (one qubit) or 4 (two qubits),
so the helpers here validate dimensions instead of being generic.  Eigenwork
goes through numpy's Hermitian solver only; there is deliberately no general
nonsymmetric eigensolver in the state-space code paths.
"""

from __future__ import annotations

import numpy as np

HERMITIAN_TOL = 1e-10
# Negative eigenvalues above this magnitude are round-off; below it they are an error.
EIG_CLAMP = 1e-8
# Eigenvalues below this fraction of the largest are round-off dust from
# rank-deficient inputs; sqrt would amplify them from ~1e-17 to ~1e-9.
RELATIVE_RANK_FLOOR = 1e-14

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
# Basis order puts the excited state first, so the lowering operator is lower-left.
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)


def _as_square(a: np.ndarray, dims: tuple[int, ...] = (2, 4)) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] not in dims:
        raise ValueError(f"expected dimension in {dims}, got {a.shape[0]}")
    return a


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a).conj().T


def hermiticity_defect(a: np.ndarray) -> float:
    """Largest entrywise deviation of a from its conjugate transpose."""
    a = np.asarray(a, dtype=complex)
    return float(np.max(np.abs(a - dagger(a))))


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two single-qubit (2x2) operators."""
    a = _as_square(a, dims=(2,))
    b = _as_square(b, dims=(2,))
    return np.kron(a, b)


def hermitian_eigen(h: np.ndarray, tol: float = HERMITIAN_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian 2x2 or 4x4 matrix.

    Returns (w, v) with eigenvalues ascending and orthonormal eigenvector
    columns, so h = v @ diag(w) @ v^dagger.  Rejects matrices whose
    Hermiticity defect exceeds tol.
    """
    h = _as_square(h)
    defect = hermiticity_defect(h)
    if defect > tol:
        raise ValueError(f"matrix is not Hermitian: defect {defect:.3e} > {tol:.1e}")
    w, v = np.linalg.eigh(0.5 * (h + dagger(h)))
    return w, v


def psd_sqrt(h: np.ndarray, tol: float = HERMITIAN_TOL, clamp: float = EIG_CLAMP) -> np.ndarray:
    """Hermitian square root of a positive semidefinite matrix.

    Eigenvalues in [-clamp, 0) are treated as round-off and set to zero;
    anything more negative raises ValueError.  Positive eigenvalues below
    RELATIVE_RANK_FLOOR times the largest are zeroed too: for rank-deficient
    inputs they are pure round-off, and their square roots would otherwise
    leak ~1e-9 off the true support.
    """
    w, v = hermitian_eigen(h, tol=tol)
    if w[0] < -clamp:
        raise ValueError(f"matrix is not PSD: min eigenvalue {w[0]:.3e} < -{clamp:.1e}")
    w = np.where(w < RELATIVE_RANK_FLOOR * max(float(w[-1]), 0.0), 0.0, w)
    s = (v * np.sqrt(w)) @ dagger(v)
    return 0.5 * (s + dagger(s))

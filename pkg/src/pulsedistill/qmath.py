"""Dense linear algebra for small Hermitian problems.

All operators in this package are complex matrices of dimension 4 or 16,
so everything below is a thin, checked layer over numpy's dense routines.
States are one-dimensional complex vectors. Spectral decompositions are
Hermitian-only by design: propagators are always built from an
eigendecomposition, never from a series expansion, so unitarity holds to
machine precision regardless of the step size.
"""

from __future__ import annotations

import numpy as np

from .errors import NotHermitianError

# Shared tolerances. Double precision on 16x16 problems leaves several
# orders of magnitude of headroom below these.
HERM_TOL = 1e-9
UNITARY_TOL = 1e-10
NORM_TOL = 1e-10


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the left factor on the slow index.

    The composite index is ``dim(b) * i + j`` for row ``i`` of ``a`` and
    row ``j`` of ``b``, matching the particle-A-major basis order used
    throughout.
    """
    return np.kron(np.asarray(a), np.asarray(b))


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m).conj().T


def hermiticity_defect(m: np.ndarray) -> float:
    """Largest entrywise deviation of ``m`` from its conjugate transpose."""
    m = np.asarray(m)
    return float(np.abs(m - m.conj().T).max())


def require_hermitian(m: np.ndarray, tol: float = HERM_TOL) -> np.ndarray:
    """Return ``m`` unchanged, raising NotHermitianError beyond ``tol``."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotHermitianError(f"expected a square matrix, got shape {m.shape}")
    defect = hermiticity_defect(m)
    if defect > tol:
        raise NotHermitianError(f"hermiticity defect {defect:.3e} exceeds {tol:.1e}")
    return m


def hermitian_eig(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvector columns of a
    Hermitian matrix.

    Raises
    ------
    NotHermitianError
        If the input fails the hermiticity check at HERM_TOL.
    """
    m = require_hermitian(m)
    return np.linalg.eigh(m)


def propagator(h: np.ndarray, dt: float) -> np.ndarray:
    """Unitary ``exp(-i h dt)`` for Hermitian ``h``.

    Built spectrally, so the result is unitary to machine precision for
    any ``dt``; accuracy of a time integration is then limited only by
    how well ``h`` approximates the instantaneous generator.
    """
    w, v = hermitian_eig(h)
    return (v * np.exp(-1j * w * dt)) @ v.conj().T


def unitarity_defect(u: np.ndarray) -> float:
    """Largest entrywise deviation of ``u^dag u`` from the identity."""
    u = np.asarray(u)
    return float(np.abs(u.conj().T @ u - np.eye(u.shape[0])).max())


def norm_defect(psi: np.ndarray) -> float:
    """Deviation of the vector two-norm from one."""
    return float(abs(np.linalg.norm(psi) - 1.0))

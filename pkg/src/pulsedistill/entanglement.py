"""Concurrence, partial trace, and the band-projection measurement.

Density matrices are plain 4x4 complex ndarrays. The concurrence here
is the standard two-qubit measure: with rho_tilde = (sy (x) sy) rho^*
(sy (x) sy), it is max(0, l1 - l2 - l3 - l4) where l_i are the
decreasing square roots of the eigenvalues of rho rho_tilde. Those
square roots are computed as singular values of K = L^T (sy (x) sy) L
with rho = L L^dag, which is algebraically the same set but avoids
taking square roots of rounding-level eigenvalues; the naive spectral
route loses half the working digits exactly when three of the l_i are
near zero, the common case for the nearly pure states this package
produces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidDensityError, ZeroProbabilityError
from .model import DIM_PAIR
from .qmath import NORM_TOL

# (sigma_y (x) sigma_y), real in the standard basis.
_YY = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)

DENSITY_HERM_TOL = 1e-12
DENSITY_TRACE_TOL = 1e-12
DENSITY_EIG_TOL = 1e-10


@dataclass(frozen=True)
class MeasurementRecord:
    """Outcome of a projective band measurement on one particle.

    probability is the Born weight of the recorded outcome; post_state
    is the renormalized projected 16-component state; post_concurrence
    is the two-spin concurrence of the post-measurement state.
    """

    outcome: str
    probability: float
    post_state: np.ndarray
    post_concurrence: float


def reduced_spin_density(psi: np.ndarray) -> np.ndarray:
    """Two-spin density matrix, tracing out both band factors.

    Output basis order is |uu>, |ud>, |du>, |dd>. The composite index
    decomposes as 8*s_A + 4*b_A + 2*s_B + b_B, so reshaping to
    (2, 2, 2, 2) exposes the four factors directly. The result is
    rescaled to unit trace: the input norm may drift by up to 1e-10
    over a long integration, while density matrices are held to a
    tighter 1e-12 trace tolerance downstream.
    """
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (DIM_PAIR,):
        raise DomainError(f"state must have shape ({DIM_PAIR},), got {psi.shape}")
    if abs(np.linalg.norm(psi) - 1.0) > NORM_TOL:
        raise DomainError("state must be normalized")
    t = psi.reshape(2, 2, 2, 2)
    rho = np.einsum("aibj,cidj->abcd", t, t.conj()).reshape(4, 4)
    return rho / np.trace(rho).real


def _validated_cholesky_like(rho: np.ndarray) -> np.ndarray:
    """Factor rho = L L^dag after checking the density-matrix invariants."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise InvalidDensityError(f"expected 4x4, got {rho.shape}")
    defect = float(np.abs(rho - rho.conj().T).max())
    if defect > DENSITY_HERM_TOL:
        raise InvalidDensityError(f"hermiticity defect {defect:.3e}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > DENSITY_TRACE_TOL:
        raise InvalidDensityError(f"trace {tr:.12g} != 1")
    evals, evecs = np.linalg.eigh(rho)
    if evals[0] < -DENSITY_EIG_TOL:
        raise InvalidDensityError(f"negative eigenvalue {evals[0]:.3e}")
    return evecs * np.sqrt(np.clip(evals, 0.0, None))


def concurrence(rho: np.ndarray) -> float:
    """Two-qubit concurrence of a density matrix.

    Raises
    ------
    InvalidDensityError
        If rho is not Hermitian/unit-trace/PSD within tolerance.
    """
    ell = _validated_cholesky_like(rho)
    lam = np.linalg.svd(ell.T @ _YY @ ell, compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def pure_concurrence(amps: np.ndarray) -> float:
    """Concurrence 2|a_uu a_dd - a_ud a_du| of a pure two-qubit state.

    Independent of the density-matrix route; used to cross-check it.
    """
    a = np.asarray(amps, dtype=complex)
    if a.shape != (4,):
        raise DomainError(f"expected 4 amplitudes, got shape {a.shape}")
    if abs(np.linalg.norm(a) - 1.0) > 1e-9:
        raise DomainError("amplitudes must be normalized")
    return float(2.0 * abs(a[0] * a[3] - a[1] * a[2]))


def concurrence_curve(theta: float, gt: float) -> float:
    """Closed-form unconditioned concurrence |sin(2 theta) cos(gt)|."""
    return abs(math.sin(2.0 * theta) * math.cos(gt))


def conditional_concurrence(theta: float, gt: float) -> float:
    """Closed-form concurrence after post-selecting band 0 on particle B:

        |sin(2 theta) cos(gt)| / (sin^2 theta + cos^2 theta cos^2 gt).

    The denominator is the band-0 probability; it vanishes only at
    theta = 0 with cos(gt) = 0, where the surviving state is a spin
    product state, so 0 is returned there by convention.
    """
    num = abs(math.sin(2.0 * theta) * math.cos(gt))
    den = math.sin(theta) ** 2 + (math.cos(theta) * math.cos(gt)) ** 2
    if den < 1e-300:
        return 0.0
    return num / den


_BAND_AXIS = {"A": 4, "B": 1}


def project_band(psi: np.ndarray, particle: str, outcome: str) -> MeasurementRecord:
    """Projective band measurement on either particle.

    Only the particle-B measurement is part of the distillation
    protocol; the particle-A variant exists to let tests exercise the
    A/B symmetry and is otherwise unused.

    Raises
    ------
    ZeroProbabilityError
        If the requested outcome has Born weight below 1e-14.
    """
    if particle not in _BAND_AXIS:
        raise DomainError(f"particle must be 'A' or 'B', got {particle!r}")
    if outcome not in ("band0", "band1"):
        raise DomainError(f"outcome must be 'band0' or 'band1', got {outcome!r}")
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (DIM_PAIR,):
        raise DomainError(f"state must have shape ({DIM_PAIR},), got {psi.shape}")
    if abs(np.linalg.norm(psi) - 1.0) > NORM_TOL:
        raise DomainError("state must be normalized")
    band = (np.arange(DIM_PAIR) // _BAND_AXIS[particle]) % 2
    keep = band == (0 if outcome == "band0" else 1)
    prob = float(np.sum(np.abs(psi[keep]) ** 2))
    if prob < 1e-14:
        raise ZeroProbabilityError(f"outcome {outcome} has probability {prob:.3e}")
    post = np.zeros(DIM_PAIR, dtype=complex)
    post[keep] = psi[keep] / math.sqrt(prob)
    c = concurrence(reduced_spin_density(post))
    return MeasurementRecord(
        outcome=outcome, probability=prob, post_state=post, post_concurrence=c
    )


def project_band_B(psi: np.ndarray, outcome: str) -> MeasurementRecord:
    """Band measurement on particle B (the protocol's measurement step)."""
    return project_band(psi, "B", outcome)


def band0_concurrence(psi: np.ndarray) -> float:
    """Concurrence after projecting B onto band 0; 0.0 if that outcome
    has vanishing probability."""
    try:
        return project_band_B(psi, "band0").post_concurrence
    except ZeroProbabilityError:
        return 0.0

"""Shared oracles for the test suite.

Everything here recomputes package results by an independent route:
loop-based partial trace, lab-frame closed-form propagation through the
rotating frame, and random state generation.
"""

import numpy as np

from pulsedistill.model import local_spectrum, rotating_frame_hamiltonian
from pulsedistill.qmath import kron, propagator


def rand_state(rng, dim=16):
    psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return psi / np.linalg.norm(psi)


def rand_density(rng, dim=4, rank=None):
    rank = dim if rank is None else rank
    a = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def brute_reduced_spin(psi):
    # Literal double sum over band indices; composite index 8sA+4bA+2sB+bB.
    rho = np.zeros((4, 4), dtype=complex)
    for s_a in (0, 1):
        for s_b in (0, 1):
            for s_a2 in (0, 1):
                for s_b2 in (0, 1):
                    acc = 0.0 + 0.0j
                    for b_a in (0, 1):
                        for b_b in (0, 1):
                            i = 8 * s_a + 4 * b_a + 2 * s_b + b_b
                            j = 8 * s_a2 + 4 * b_a + 2 * s_b2 + b_b
                            acc += psi[i] * np.conj(psi[j])
                    rho[2 * s_a + s_b, 2 * s_a2 + s_b2] = acc
    return rho


def frame_solution(p, psi0, t):
    """Exact lab-frame evolution via the static rotating-frame generator.

    The frame transform is exact (no rotating-wave step), so this is a
    closed-form solution of the full time-dependent problem and serves
    as the integrator's convergence oracle.
    """
    h_u = rotating_frame_hamiltonian(p)
    u_frame_dag = np.diag(
        np.exp(1j * p.omega * t * np.array([0.5, -0.5, 0.5, -0.5]))
    )
    u_b = u_frame_dag @ propagator(h_u, t)
    u_a = np.diag(np.exp(-1j * local_spectrum(p).as_array() * t))
    return kron(u_a, u_b) @ psi0


def wootters_spectral(rho):
    """Concurrence via eigenvalues of sqrt(rho) rho_tilde sqrt(rho).

    The textbook Hermitian-only route; accurate only to ~1e-8 for nearly
    pure states because three eigenvalues of the product sit at rounding
    level before the square root. Used as a looser cross-check of the
    package's singular-value formulation.
    """
    yy = np.array(
        [
            [0.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 0.0],
        ]
    )
    w, v = np.linalg.eigh(rho)
    sqrt_rho = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    rho_tilde = yy @ rho.conj() @ yy
    m = sqrt_rho @ rho_tilde @ sqrt_rho
    mw = np.linalg.eigvalsh(m)
    lam = np.sqrt(np.clip(mw, 0.0, None))[::-1]
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])

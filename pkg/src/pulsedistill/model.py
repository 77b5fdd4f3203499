"""Hamiltonians and spectra for a driven pair of spin-band particles.

Each particle carries two two-level degrees of freedom: a spin (up/down,
Pauli operators sigma) and a band index (0/1, Pauli operators tau). The
local basis order is

    0: |0,up>   1: |1,up>   2: |0,down>   3: |1,down>

with sigma_z|up> = +|up> and tau_z|0> = +|0>. Two-particle basis states
are indexed 4*a + b for local indices a (particle A) and b (particle B),
so A is the slow index. hbar = 1 throughout and omega_s, omega_b, J, g,
omega all carry the same energy unit.

The static part is the same on both particles,

    H0 = -(omega_s sigma_z + omega_b tau_z - J sigma_z tau_z),

an on-site spin-band coupling J that shifts the band splitting by -2J in
the spin-up sector and +2J in the spin-down sector. A classical field of
frequency omega and phase phi drives the band transition of particle B
only; tuning omega to the spin-up band splitting 2*(omega_b - J) makes
that sector resonant while the spin-down sector stays detuned by 4J.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DegeneratePulseError, DomainError
from .qmath import kron

DIM_LOCAL = 4
DIM_PAIR = 16

LOCAL_BASIS_LABELS = ("|0,up>", "|1,up>", "|0,down>", "|1,down>")

# Dressed-level repulsion |eta34| above which the off-resonant sector is
# considered frozen and the three-level closed form is trusted.
RWA_ETA_MIN = 20.0


def pair_index(a: int, b: int) -> int:
    """Composite basis index for local indices a (particle A) and b (B)."""
    return DIM_LOCAL * a + b


def band_of(local_index: int) -> int:
    """Band quantum number (0 or 1) of a local basis index."""
    return local_index % 2


def spin_of(local_index: int) -> int:
    """Spin quantum number (0 = up, 1 = down) of a local basis index."""
    return local_index // 2


@dataclass(frozen=True)
class SystemParams:
    """Static and drive parameters of the two-particle system.

    Attributes
    ----------
    omega_s, omega_b : float
        Spin and band splittings (half the level spacing each contributes).
    J : float
        On-site spin-band coupling. Non-negative.
    g : float
        Pulse magnitude on particle B. Non-negative; zero disables the drive.
    omega : float
        Drive frequency.
    phi : float
        Drive phase at t = 0.
    theta : float
        Initial-state mixing angle, in [0, pi/2].
    """

    omega_s: float = 1.0
    omega_b: float = 2.0
    J: float = 0.5
    g: float = 0.05
    omega: float = 3.0
    phi: float = 0.0
    theta: float = math.pi / 6

    def __post_init__(self):
        for name in ("omega_s", "omega_b", "J", "g", "omega", "phi", "theta"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.J < 0:
            raise DomainError("J must be non-negative")
        if self.g < 0:
            raise DomainError("g must be non-negative")
        if not 0.0 <= self.theta <= math.pi / 2:
            raise DomainError("theta must lie in [0, pi/2]")


def default_params() -> SystemParams:
    """Baseline parameter set, driven exactly on resonance."""
    return on_resonance(SystemParams())


def on_resonance(p: SystemParams) -> SystemParams:
    """Copy of ``p`` with the drive tuned to the spin-up band splitting."""
    return replace(p, omega=resonance_frequency(p))


@dataclass(frozen=True)
class LocalSpectrum:
    """Eigenvalues of the single-particle static Hamiltonian.

    Ordered as the basis: eps1 = E(|0,up>), eps2 = E(|1,up>),
    eps3 = E(|0,down>), eps4 = E(|1,down>). Traceless by construction.
    """

    eps1: float
    eps2: float
    eps3: float
    eps4: float

    def as_array(self) -> np.ndarray:
        return np.array([self.eps1, self.eps2, self.eps3, self.eps4])


def local_spectrum(p: SystemParams) -> LocalSpectrum:
    """Single-particle energies of H0 in basis order."""
    return LocalSpectrum(
        eps1=-p.omega_s - p.omega_b + p.J,
        eps2=-p.omega_s + p.omega_b - p.J,
        eps3=p.omega_s - p.omega_b - p.J,
        eps4=p.omega_s + p.omega_b + p.J,
    )


def resonance_frequency(p: SystemParams) -> float:
    """Drive frequency matching the spin-up band splitting, 2*(omega_b - J)."""
    return 2.0 * (p.omega_b - p.J)


def static_hamiltonian(p: SystemParams) -> np.ndarray:
    """Single-particle H0 as a diagonal 4x4 complex matrix."""
    return np.diag(local_spectrum(p).as_array()).astype(complex)


def pulse_hamiltonian(p: SystemParams, t: float) -> np.ndarray:
    """Drive term on one particle at lab-frame time ``t``.

    The field couples the two bands within each spin sector; the factor
    exp(+i(omega t + phi)) multiplies the band-lowering entries (0,1) and
    (2,3), its conjugate the raising entries. Hermitian for all t.
    """
    h = np.zeros((DIM_LOCAL, DIM_LOCAL), dtype=complex)
    z = p.g * np.exp(1j * (p.omega * t + p.phi))
    h[0, 1] = z
    h[2, 3] = z
    h[1, 0] = z.conjugate()
    h[3, 2] = z.conjugate()
    return h


def total_hamiltonian(p: SystemParams, t: float) -> np.ndarray:
    """Two-particle Hamiltonian at lab-frame time ``t``.

    H(t) = H0 (x) 1 + 1 (x) (H0 + H_pulse(t)); only particle B is driven.
    """
    h0 = static_hamiltonian(p)
    eye = np.eye(DIM_LOCAL, dtype=complex)
    return kron(h0, eye) + kron(eye, h0 + pulse_hamiltonian(p, t))


def rotating_frame_hamiltonian(p: SystemParams) -> np.ndarray:
    """Time-independent single-particle generator in the drive frame.

    The frame U(t) = exp(-i omega t tau_z / 2) removes the drive's time
    dependence exactly (no rotating-wave step is taken here): the
    transformed generator U H U^dag + i (dU/dt) U^dag has diagonal
    entries eps_i + omega/2 for band 0 and eps_i - omega/2 for band 1,
    and static off-diagonal couplings g e^{+i phi} at (0,1) and (2,3).
    """
    eps = local_spectrum(p).as_array()
    shift = np.array([+0.5, -0.5, +0.5, -0.5]) * p.omega
    h = np.diag(eps + shift).astype(complex)
    z = p.g * np.exp(1j * p.phi)
    h[0, 1] = z
    h[2, 3] = z
    h[1, 0] = z.conjugate()
    h[3, 2] = z.conjugate()
    return h


@dataclass(frozen=True)
class DressedSpectrum:
    """Eigensystem of the rotating-frame single-particle generator.

    ``energies[k]`` pairs with the column ``states[:, k]``. The first two
    entries dress the spin-up band doublet, the last two the spin-down
    doublet; within each doublet the upper branch comes first. ``eta12``
    and ``eta34`` are the dimensionless detunings (eps_i - eps_j + omega)
    / (2g) of the two doublets; a doublet with |eta| >> 1 is effectively
    frozen by the drive.
    """

    energies: np.ndarray
    states: np.ndarray
    eta12: float
    eta34: float

    @property
    def E1(self) -> float:
        return float(self.energies[0])

    @property
    def E2(self) -> float:
        return float(self.energies[1])

    @property
    def E3(self) -> float:
        return float(self.energies[2])

    @property
    def E4(self) -> float:
        return float(self.energies[3])

    @property
    def psi1(self) -> np.ndarray:
        return self.states[:, 0]

    @property
    def psi2(self) -> np.ndarray:
        return self.states[:, 1]

    @property
    def psi3(self) -> np.ndarray:
        return self.states[:, 2]

    @property
    def psi4(self) -> np.ndarray:
        return self.states[:, 3]


def dressed_spectrum(p: SystemParams) -> DressedSpectrum:
    """Closed-form dressed energies and states.

    Each spin sector reduces to a 2x2 block [[a, g e^{i phi}],
    [g e^{-i phi}, b]] with a - b = eps_i - eps_j + omega, giving branches
    (a + b)/2 +- g sqrt(eta^2 + 1) and mixing angle set by eta.

    Raises
    ------
    DegeneratePulseError
        If g = 0, where the dressed basis is not defined.
    """
    if p.g == 0:
        raise DegeneratePulseError("dressed states are undefined at g = 0")
    eps = local_spectrum(p).as_array()
    energies = np.empty(4)
    states = np.zeros((4, 4), dtype=complex)
    etas = []
    for block, (i, j) in enumerate(((0, 1), (2, 3))):
        eta = (eps[i] - eps[j] + p.omega) / (2.0 * p.g)
        etas.append(eta)
        mean = 0.5 * (eps[i] + eps[j])
        split = p.g * math.sqrt(eta * eta + 1.0)
        energies[2 * block] = mean + split
        energies[2 * block + 1] = mean - split
        for branch, sign in enumerate((+1.0, -1.0)):
            vec = np.zeros(4, dtype=complex)
            vec[i] = np.exp(1j * p.phi)
            vec[j] = -eta + sign * math.sqrt(eta * eta + 1.0)
            states[:, 2 * block + branch] = vec / np.linalg.norm(vec)
    return DressedSpectrum(
        energies=energies, states=states, eta12=etas[0], eta34=etas[1]
    )


def rwa_validity(p: SystemParams) -> tuple[float, bool]:
    """Detuning parameter eta34 of the spin-down doublet and whether the
    three-level closed form is trusted (|eta34| >= RWA_ETA_MIN).

    On resonance eta34 = -2J/g, so validity is a statement about J/g.

    Raises
    ------
    DegeneratePulseError
        If g = 0.
    """
    if p.g == 0:
        raise DegeneratePulseError("eta34 is undefined at g = 0")
    eps = local_spectrum(p).as_array()
    eta34 = (eps[2] - eps[3] + p.omega) / (2.0 * p.g)
    return eta34, abs(eta34) >= RWA_ETA_MIN

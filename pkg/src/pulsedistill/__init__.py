"""Entanglement distillation by a local resonant pulse, simulated.

Two particles each carry a spin and a two-level band degree of freedom.
A partially entangled spin pair, cos(theta)|up,up> + sin(theta)
|down,down>, is distilled by pulsing particle B's band transition on
resonance for a calibrated duration and post-selecting on a band
measurement: the surviving pairs are maximally entangled, at yield
2 sin^2(theta) and efficiency tan(theta).

The package provides the model Hamiltonians and spectra (``model``),
closed-form and exact time evolution (``dynamics``), concurrence and
the band measurement (``entanglement``), the stochastic protocol
(``protocol``), and a command-line front end (``cli``).
"""

from .errors import (
    ConfigError,
    DegeneratePulseError,
    DomainError,
    InvalidDensityError,
    NotHermitianError,
    OffResonanceError,
    OutOfRegimeError,
    PulseDistillError,
    StepTooLargeError,
    ZeroProbabilityError,
)
from .qmath import (
    HERM_TOL,
    NORM_TOL,
    UNITARY_TOL,
    dagger,
    hermitian_eig,
    hermiticity_defect,
    kron,
    norm_defect,
    propagator,
    require_hermitian,
    unitarity_defect,
)
from .model import (
    DIM_LOCAL,
    DIM_PAIR,
    LOCAL_BASIS_LABELS,
    RWA_ETA_MIN,
    DressedSpectrum,
    LocalSpectrum,
    SystemParams,
    band_of,
    default_params,
    dressed_spectrum,
    local_spectrum,
    on_resonance,
    pair_index,
    pulse_hamiltonian,
    resonance_frequency,
    rotating_frame_hamiltonian,
    rwa_validity,
    spin_of,
    static_hamiltonian,
    total_hamiltonian,
)
from .dynamics import (
    RESONANCE_TOL,
    RWA_SUPPORT,
    EvolutionTrace,
    RwaAmplitudes,
    default_step,
    exact_propagate,
    initial_state,
    rwa_amplitudes,
    rwa_state,
    trace_evolution,
)
from .entanglement import (
    MeasurementRecord,
    band0_concurrence,
    concurrence,
    concurrence_curve,
    conditional_concurrence,
    project_band,
    project_band_B,
    pure_concurrence,
    reduced_spin_density,
)
from .protocol import (
    DistillationPlan,
    EnsembleStats,
    SweepPoint,
    efficiency,
    optimal_pulse_time,
    pair_stream,
    pair_uniforms,
    plan_distillation,
    run_ensemble,
    run_single_pair,
    sweep_theta,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError", "DegeneratePulseError", "DomainError", "InvalidDensityError",
    "NotHermitianError", "OffResonanceError", "OutOfRegimeError",
    "PulseDistillError", "StepTooLargeError", "ZeroProbabilityError",
    "HERM_TOL", "NORM_TOL", "UNITARY_TOL", "dagger", "hermitian_eig",
    "hermiticity_defect", "kron", "norm_defect", "propagator",
    "require_hermitian", "unitarity_defect",
    "DIM_LOCAL", "DIM_PAIR", "LOCAL_BASIS_LABELS", "RWA_ETA_MIN",
    "DressedSpectrum", "LocalSpectrum", "SystemParams", "band_of",
    "default_params", "dressed_spectrum", "local_spectrum", "on_resonance",
    "pair_index", "pulse_hamiltonian", "resonance_frequency",
    "rotating_frame_hamiltonian", "rwa_validity", "spin_of",
    "static_hamiltonian", "total_hamiltonian",
    "RESONANCE_TOL", "RWA_SUPPORT", "EvolutionTrace", "RwaAmplitudes",
    "default_step", "exact_propagate", "initial_state", "rwa_amplitudes",
    "rwa_state", "trace_evolution",
    "MeasurementRecord", "band0_concurrence", "concurrence",
    "concurrence_curve", "conditional_concurrence", "project_band",
    "project_band_B", "pure_concurrence", "reduced_spin_density",
    "DistillationPlan", "EnsembleStats", "SweepPoint", "efficiency",
    "optimal_pulse_time", "pair_stream", "pair_uniforms", "plan_distillation",
    "run_ensemble", "run_single_pair", "sweep_theta",
    "__version__",
]

"""The distillation protocol end to end.

One round: prepare N identical partially entangled pairs, pulse
particle B for the optimal duration t* = arccos(tan theta)/g, measure
B's band, and keep the pairs that returned band 0 (the classical
communication step). Kept pairs are maximally entangled at t*, so the
average concurrence over the whole ensemble is the success fraction
N'/N, with closed-form value 2 sin^2(theta), and the efficiency
relative to the input concurrence sin(2 theta) is tan(theta).

Monte Carlo sampling uses a counter-based generator keyed by
(seed, pair index): every pair owns one Philox counter block, so a
serial sweep and any parallel or per-pair replay of the same seed
produce bit-identical outcomes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from numpy.random import Generator, Philox

from .dynamics import exact_propagate, initial_state, rwa_state
from .entanglement import MeasurementRecord, project_band_B
from .errors import DomainError, OutOfRegimeError, ZeroProbabilityError
from .model import SystemParams

_MAX_SEED = 2**64


def optimal_pulse_time(theta: float, g: float) -> float:
    """Smallest positive t with cos(g t) = tan(theta).

    At that time the band-0 post-selected state is maximally entangled.

    Raises
    ------
    OutOfRegimeError
        If theta is outside (0, pi/4): at theta = 0 there is nothing to
        distill, and for theta >= pi/4 the condition has no solution
        (the input is already at or past maximal entanglement).
    DomainError
        If g <= 0.
    """
    if g <= 0:
        raise DomainError("g must be positive")
    if not 0.0 < theta < math.pi / 4:
        raise OutOfRegimeError("optimal pulse time requires theta in (0, pi/4)")
    return math.acos(math.tan(theta)) / g


@dataclass(frozen=True)
class DistillationPlan:
    """Closed-form summary of one protocol round at the optimal time."""

    theta: float
    g: float
    t_star: float
    success_probability: float
    expected_c_bar: float


def plan_distillation(theta: float, g: float) -> DistillationPlan:
    """Plan a round at t*: success probability and expected yield are
    both 2 sin^2(theta) there (every success carries concurrence 1)."""
    t_star = optimal_pulse_time(theta, g)
    p_succ = 2.0 * math.sin(theta) ** 2
    return DistillationPlan(
        theta=theta,
        g=g,
        t_star=t_star,
        success_probability=p_succ,
        expected_c_bar=p_succ,
    )


def pair_stream(seed: int, pair_index: int) -> Generator:
    """Random stream owned by one pair.

    Pair j draws from Philox counter block j under key ``seed``; the
    first uniform of this stream equals pair_uniforms(seed, n)[j]. Each
    pair consumes a single draw in this protocol, so streams never
    collide.
    """
    if not 0 <= seed < _MAX_SEED:
        raise DomainError("seed must fit in 64 bits")
    if pair_index < 0:
        raise DomainError("pair_index must be non-negative")
    return Generator(Philox(key=seed, counter=[pair_index, 0, 0, 0]))


def pair_uniforms(seed: int, n: int) -> np.ndarray:
    """First uniform of every pair stream, vectorized.

    Block j of Philox under key ``seed`` yields four 64-bit words; the
    per-pair uniform is word 0 of block j mapped to [0, 1) exactly as
    Generator.random does (top 53 bits).
    """
    if not 0 <= seed < _MAX_SEED:
        raise DomainError("seed must fit in 64 bits")
    words = Philox(key=seed).random_raw(4 * n).reshape(n, 4)[:, 0]
    return (words >> 11) * 2.0**-53


def _evolved_state(
    theta: float, p: SystemParams, t: float, engine: str
) -> np.ndarray:
    pp = replace(p, theta=theta)
    if engine == "rwa":
        return rwa_state(pp, t)
    if engine == "exact":
        return exact_propagate(pp, initial_state(theta), t)
    raise DomainError(f"unknown engine {engine!r}")


def _band0_probability(psi: np.ndarray) -> float:
    return float(np.sum(np.abs(psi[::2]) ** 2))


def run_single_pair(
    theta: float,
    p: SystemParams,
    t: float,
    rng: Generator,
    engine: str = "rwa",
) -> MeasurementRecord:
    """Evolve one pair to time t and sample its band measurement.

    The outcome is drawn from the Born probabilities with a single
    uniform from ``rng``; the returned record carries the outcome flag
    that the classical-communication step would transmit.
    """
    psi = _evolved_state(theta, p, t, engine)
    p0 = _band0_probability(psi)
    outcome = "band0" if rng.random() < p0 else "band1"
    return project_band_B(psi, outcome)


@dataclass(frozen=True)
class EnsembleStats:
    """Monte Carlo summary of one protocol round.

    n_success counts band-0 outcomes; at t = t* these are exactly the
    maximally entangled survivors, so c_bar = n_success / n_pairs is
    the average concurrence over the whole ensemble. Away from t* the
    survivors carry concurrence below 1 and
    mean_conditional_concurrence reports their common value.
    """

    n_pairs: int
    n_success: int
    c_bar: float
    std_error: float
    seed: int
    mean_conditional_concurrence: float


def run_ensemble(
    theta: float,
    p: SystemParams,
    t: float,
    n_pairs: int,
    seed: int,
    engine: str = "rwa",
) -> EnsembleStats:
    """Run the protocol over n_pairs identical pairs.

    All pairs share one deterministic state, so it is evolved once and
    only the measurement outcomes are sampled, one uniform per pair
    from its own counter block. The aggregation is a plain count, so
    the result is independent of evaluation order.
    """
    if n_pairs < 1:
        raise DomainError("n_pairs must be at least 1")
    psi = _evolved_state(theta, p, t, engine)
    p0 = _band0_probability(psi)
    u = pair_uniforms(seed, n_pairs)
    n_success = int(np.count_nonzero(u < p0))
    c_bar = n_success / n_pairs
    std_error = math.sqrt(c_bar * (1.0 - c_bar) / n_pairs)
    if n_success > 0:
        try:
            mean_cond = project_band_B(psi, "band0").post_concurrence
        except ZeroProbabilityError:  # unreachable once a success occurred
            mean_cond = 0.0
    else:
        mean_cond = 0.0
    return EnsembleStats(
        n_pairs=n_pairs,
        n_success=n_success,
        c_bar=c_bar,
        std_error=std_error,
        seed=seed,
        mean_conditional_concurrence=mean_cond,
    )


def efficiency(theta: float) -> float:
    """Yield per unit input concurrence, tan(theta) on (0, pi/4]."""
    if not 0.0 < theta <= math.pi / 4:
        raise OutOfRegimeError("efficiency is defined on (0, pi/4]")
    return math.tan(theta)


@dataclass(frozen=True)
class SweepPoint:
    """One row of a theta sweep at the per-angle optimal pulse time."""

    theta: float
    c_initial: float
    c_bar_analytic: float
    c_bar_mc: float
    std_error: float
    efficiency: float


def sweep_theta(
    theta_grid,
    p: SystemParams,
    n_pairs: int,
    seed: int,
    engine: str = "rwa",
    mirror: bool = False,
) -> list[SweepPoint]:
    """Closed-form and Monte Carlo yield across a grid of input angles.

    Each angle runs at its own optimal time with per-row seed
    ``(seed + row index) mod 2**64`` so rows stay statistically
    independent while the whole sweep remains reproducible. theta =
    pi/4 needs no pulse and succeeds with certainty.

    With ``mirror=True``, angles in (pi/4, pi/2) are accepted and
    handled by the reflected protocol: drive the spin-down band
    transition instead, which swaps the roles of the two spin sectors
    and yields 2 cos^2(theta) by the theta <-> pi/2 - theta symmetry.
    This regime is an extrapolation beyond the original scheme and is
    off by default.
    """
    points = []
    for row, theta in enumerate(np.asarray(theta_grid, dtype=float)):
        mirrored = theta > math.pi / 4
        if mirrored and not mirror:
            raise OutOfRegimeError(
                f"theta {theta:.6g} outside (0, pi/4]; pass mirror=True "
                "for the reflected protocol"
            )
        if not 0.0 < theta < math.pi / 2:
            raise OutOfRegimeError(f"theta {theta:.6g} outside (0, pi/2)")
        work_theta = math.pi / 2 - theta if mirrored else theta
        if work_theta < math.pi / 4:
            t_star = optimal_pulse_time(work_theta, p.g)
        else:
            t_star = 0.0
        stats = run_ensemble(
            work_theta, p, t_star, n_pairs, (seed + row) % _MAX_SEED, engine
        )
        points.append(
            SweepPoint(
                theta=float(theta),
                c_initial=math.sin(2.0 * theta),
                c_bar_analytic=2.0 * math.sin(work_theta) ** 2,
                c_bar_mc=stats.c_bar,
                std_error=stats.std_error,
                efficiency=math.tan(work_theta),
            )
        )
    return points

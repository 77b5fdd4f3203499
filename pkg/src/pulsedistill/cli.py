"""Command-line front end emitting deterministic CSV/JSON artifacts.

Five subcommands: ``spectrum`` (level structure report), ``evolve``
(population/concurrence curves), ``compare-rwa`` (closed form vs exact
integration), ``distill`` (one protocol round at the optimal time), and
``sweep`` (yield and efficiency across input angles). Configuration
merges, in increasing precedence: built-in defaults, the
PULSEDISTILL_SEED environment variable, a ``key = value`` config file,
command-line flags.

Exit codes: 0 success, 2 configuration error, 3 I/O error, 4 numerical
or physical-regime failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from .dynamics import trace_evolution
from .errors import ConfigError, DomainError, PulseDistillError
from .model import (
    SystemParams,
    dressed_spectrum,
    local_spectrum,
    resonance_frequency,
    rwa_validity,
)
from .protocol import efficiency, plan_distillation, run_ensemble, sweep_theta

_COMMANDS = ("spectrum", "evolve", "compare-rwa", "distill", "sweep")

_CANONICAL_FORMAT = {
    "spectrum": "json",
    "evolve": "csv",
    "compare-rwa": "csv",
    "distill": "json",
    "sweep": "csv",
}

_FLOAT_KEYS = ("omega_s", "omega_b", "J", "g", "omega", "phi", "theta", "t_max", "dt")
_INT_KEYS = ("n_points", "n_pairs", "seed")
_CHOICE_KEYS = {"engine": ("rwa", "exact"), "format": ("csv", "json")}
_PATH_KEYS = ("output",)
_LIST_KEYS = ("theta_grid",)
_CONFIG_KEYS = (
    set(_FLOAT_KEYS) | set(_INT_KEYS) | set(_CHOICE_KEYS) | set(_PATH_KEYS)
    | set(_LIST_KEYS)
)

_DEFAULTS = {
    "omega_s": 1.0,
    "omega_b": 2.0,
    "J": 0.5,
    "g": 0.05,
    "omega": None,  # None means: tune to resonance
    "phi": 0.0,
    "theta": math.pi / 6,
    "t_max": None,  # per-command default
    "dt": None,  # integrator picks its own
    "n_points": 201,
    "theta_grid": None,
    "n_pairs": 100_000,
    "seed": 42,
    "engine": "rwa",
    "output": None,  # stdout
    "format": None,  # the command's canonical format
}


@dataclass(frozen=True)
class RunConfig:
    """Fully validated inputs of one command invocation."""

    command: str
    params: SystemParams
    t_max: float | None
    dt: float | None
    n_points: int
    theta_grid: tuple[float, ...] | None
    n_pairs: int
    seed: int
    engine: str
    output_path: str | None
    format: str
    mirror: bool = False


class _Parser(argparse.ArgumentParser):
    # Raise instead of exiting so main() owns the exit code.
    def error(self, message):
        raise ConfigError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pulsedistill", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in _COMMANDS:
        sp = sub.add_parser(name)
        for key, typ in [(k, float) for k in _FLOAT_KEYS] + [
            (k, int) for k in _INT_KEYS
        ]:
            names = [f"--{key}"]
            if "_" in key:
                names.append(f"--{key.replace('_', '-')}")
            sp.add_argument(*names, type=typ, dest=key, default=None)
        for key, choices in _CHOICE_KEYS.items():
            sp.add_argument(f"--{key}", choices=choices, default=None)
        sp.add_argument("--theta_grid", "--theta-grid", dest="theta_grid",
                        default=None, help="comma-separated angles in radians")
        sp.add_argument("--output", default=None)
        sp.add_argument("--config", default=None, help="key = value file")
        if name == "sweep":
            sp.add_argument("--mirror", action="store_true",
                            help="accept theta > pi/4 via the reflected protocol")
    return parser


def _coerce(key: str, text: str, where: str):
    try:
        if key in _FLOAT_KEYS:
            return float(text)
        if key in _INT_KEYS:
            return int(text)
        if key in _LIST_KEYS:
            return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise ConfigError(f"{where}: invalid value {text!r} for {key}") from None
    if key in _CHOICE_KEYS:
        if text not in _CHOICE_KEYS[key]:
            raise ConfigError(
                f"{where}: {key} must be one of {_CHOICE_KEYS[key]}, got {text!r}"
            )
        return text
    return text


def _read_config_file(path: str) -> dict:
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {e}") from None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, text = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key '{key}'")
        values[key] = _coerce(key, text, where=f"{path}:{lineno}")
    return values


def parse_config(args=None, config_file: str | None = None) -> RunConfig:
    """Merge defaults, environment, config file, and flags into a RunConfig.

    Raises
    ------
    ConfigError
        On unknown keys, malformed values, or physically invalid
        parameter combinations.
    """
    ns = _build_parser().parse_args(args)
    values = dict(_DEFAULTS)

    env_seed = os.environ.get("PULSEDISTILL_SEED")
    if env_seed is not None:
        values["seed"] = _coerce("seed", env_seed, where="PULSEDISTILL_SEED")

    path = ns.config if ns.config is not None else config_file
    if path is not None:
        values.update(_read_config_file(path))

    for key in _CONFIG_KEYS:
        flag = getattr(ns, key, None)
        if flag is not None:
            values[key] = _coerce(key, flag, "flag") if isinstance(flag, str) else flag

    fmt = values["format"] or _CANONICAL_FORMAT[ns.command]
    if fmt != _CANONICAL_FORMAT[ns.command]:
        raise ConfigError(
            f"command {ns.command} emits {_CANONICAL_FORMAT[ns.command]}, not {fmt}"
        )
    if values["n_points"] < 2:
        raise ConfigError("n_points must be at least 2")
    if values["n_pairs"] < 1:
        raise ConfigError("n_pairs must be at least 1")
    if not 0 <= values["seed"] < 2**64:
        raise ConfigError("seed must fit in 64 bits")
    for key in ("t_max", "dt"):
        if values[key] is not None and not values[key] > 0:
            raise ConfigError(f"{key} must be positive")
    grid = values["theta_grid"]
    if grid is not None:
        grid = tuple(float(x) for x in grid)
        if not grid or not all(math.isfinite(x) for x in grid):
            raise ConfigError("theta_grid must be a non-empty list of finite angles")

    omega = values["omega"]
    if omega is None:
        omega = 2.0 * (values["omega_b"] - values["J"])
    try:
        params = SystemParams(
            omega_s=values["omega_s"],
            omega_b=values["omega_b"],
            J=values["J"],
            g=values["g"],
            omega=omega,
            phi=values["phi"],
            theta=values["theta"],
        )
    except DomainError as e:
        raise ConfigError(str(e)) from None

    return RunConfig(
        command=ns.command,
        params=params,
        t_max=values["t_max"],
        dt=values["dt"],
        n_points=values["n_points"],
        theta_grid=grid,
        n_pairs=values["n_pairs"],
        seed=values["seed"],
        engine=values["engine"],
        output_path=values["output"],
        format=fmt,
        mirror=bool(getattr(ns, "mirror", False)),
    )


def _fmt(x: float) -> str:
    return f"{x:.9f}"


def _write_text(path: str | None, text: str):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _write_json(cfg: RunConfig, payload: dict):
    try:
        text = json.dumps(payload, indent=2, allow_nan=False) + "\n"
    except ValueError as e:
        raise PulseDistillError(f"non-finite value in report: {e}") from None
    _write_text(cfg.output_path, text)


def _evolution_grid(cfg: RunConfig, default_span_in_gt: float) -> np.ndarray:
    if cfg.t_max is not None:
        t_max = cfg.t_max
    elif cfg.params.g > 0:
        t_max = default_span_in_gt / cfg.params.g
    else:
        raise ConfigError("t_max is required when g = 0")
    return np.linspace(0.0, t_max, cfg.n_points)


def cmd_spectrum(cfg: RunConfig):
    """JSON report of the level structure and drive diagnostics."""
    p = cfg.params
    eps = local_spectrum(p)
    dressed = dressed_spectrum(p)
    eta34, valid = rwa_validity(p)
    _write_json(cfg, {
        "params": {
            "omega_s": p.omega_s, "omega_b": p.omega_b, "J": p.J, "g": p.g,
            "omega": p.omega, "phi": p.phi, "theta": p.theta,
        },
        "local_spectrum": list(eps.as_array()),
        "resonance_frequency": resonance_frequency(p),
        "dressed_energies": list(dressed.energies),
        "eta12": dressed.eta12,
        "eta34": eta34,
        "rwa_valid": bool(valid),
    })


def cmd_evolve(cfg: RunConfig):
    """CSV of populations, concurrence, and conditional concurrence."""
    p = cfg.params
    grid = _evolution_grid(cfg, default_span_in_gt=2.0 * math.pi)
    trace = trace_evolution(p, p.theta, grid, engine=cfg.engine)
    lines = ["t_in_1_over_g,p_00dd,p_00uu,p_01uu,concurrence,conditional_concurrence"]
    for k, t in enumerate(trace.times):
        row = (
            t * p.g,
            trace.populations[k, 0],
            trace.populations[k, 1],
            trace.populations[k, 2],
            trace.concurrence[k],
            trace.conditional_concurrence[k],
        )
        lines.append(",".join(_fmt(x) for x in row))
    _write_text(cfg.output_path, "\n".join(lines) + "\n")


def cmd_compare_rwa(cfg: RunConfig):
    """CSV comparing closed-form and exact populations, plus a summary line.

    The summary goes to stdout, or to stderr when the CSV itself is
    written to stdout.
    """
    p = cfg.params
    grid = _evolution_grid(cfg, default_span_in_gt=math.pi)
    ref = trace_evolution(p, p.theta, grid, engine="rwa")
    num = trace_evolution(p, p.theta, grid, engine="exact")
    pop_err = np.abs(num.populations - ref.populations).max(axis=1)
    leakage = 1.0 - num.populations.sum(axis=1)
    eta34, _ = rwa_validity(p)
    lines = ["t,pop_error_max,leakage,eta34"]
    for k, t in enumerate(grid):
        lines.append(",".join(_fmt(x) for x in (t * p.g, pop_err[k], leakage[k], eta34)))
    _write_text(cfg.output_path, "\n".join(lines) + "\n")
    summary = (
        f"max population discrepancy {pop_err.max():.3e} "
        f"(eta34 = {eta34:.6g}, {cfg.n_points} points)\n"
    )
    (sys.stderr if cfg.output_path is None else sys.stdout).write(summary)


def cmd_distill(cfg: RunConfig):
    """JSON report of one full protocol round at the optimal pulse time."""
    p = cfg.params
    plan = plan_distillation(p.theta, p.g)
    stats = run_ensemble(
        p.theta, p, plan.t_star, cfg.n_pairs, cfg.seed, engine=cfg.engine
    )
    _write_json(cfg, {
        "theta": plan.theta,
        "g": plan.g,
        "t_star": plan.t_star,
        "c_initial": math.sin(2.0 * plan.theta),
        "success_probability": plan.success_probability,
        "expected_c_bar": plan.expected_c_bar,
        "efficiency": efficiency(plan.theta),
        "engine": cfg.engine,
        "n_pairs": stats.n_pairs,
        "seed": stats.seed,
        "n_success": stats.n_success,
        "c_bar": stats.c_bar,
        "std_error": stats.std_error,
        "mean_conditional_concurrence": stats.mean_conditional_concurrence,
    })


def cmd_sweep(cfg: RunConfig):
    """CSV of yield and efficiency across input angles at per-angle t*."""
    if cfg.theta_grid is not None:
        grid = np.asarray(cfg.theta_grid, dtype=float)
    else:
        grid = np.linspace(math.pi / 400, math.pi / 4, 100)
    points = sweep_theta(
        grid, cfg.params, cfg.n_pairs, cfg.seed,
        engine=cfg.engine, mirror=cfg.mirror,
    )
    lines = ["theta_over_pi,C_initial,c_bar_analytic,c_bar_mc,std_error,efficiency"]
    for pt in points:
        row = (
            pt.theta / math.pi,
            pt.c_initial,
            pt.c_bar_analytic,
            pt.c_bar_mc,
            pt.std_error,
            pt.efficiency,
        )
        lines.append(",".join(_fmt(x) for x in row))
    _write_text(cfg.output_path, "\n".join(lines) + "\n")


_DISPATCH = {
    "spectrum": cmd_spectrum,
    "evolve": cmd_evolve,
    "compare-rwa": cmd_compare_rwa,
    "distill": cmd_distill,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
        _DISPATCH[cfg.command](cfg)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except PulseDistillError as e:
        print(f"error: {e}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())

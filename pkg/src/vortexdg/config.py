"""Flat key = value experiment configuration: parsing, validation, round trip."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields as dc_fields, replace
from pathlib import Path

from .params import FluidParams, VorticityParams

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "parse_config",
    "serialize_config",
    "load_config",
    "save_config",
]


class ConfigError(ValueError):
    """Malformed or out-of-range configuration input."""


def _parse_float_list(text: str) -> tuple[float, ...]:
    items = [piece.strip() for piece in text.split(",") if piece.strip()]
    return tuple(float(piece) for piece in items)


# key -> converter from the raw string
_CONVERTERS = {
    "a": float,
    "N": int,
    "alpha": float,
    "beta": float,
    "theta0_over_pi": float,
    "epsilon": float,
    "case": int,
    "A": float,
    "gamma": float,
    "cfl": float,
    "T": float,
    "output_times": _parse_float_list,
    "rho_floor_init": float,
    "rho_floor_limiter": float,
    "poisson_tol": float,
    "peak_tau": float,
    "peak_window": float,
    "peak_min_size": int,
    "out_dir": str,
    "label": str,
}


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: domain, initial data, gas law, run control, diagnostics.

    output_times left as None resolves to a single sample at T.
    theta0 is specified as a fraction of pi (key theta0_over_pi).
    """

    a: float = 0.2
    N: int = 200
    alpha: float = 0.95
    beta: float = 0.0
    theta0_over_pi: float = 0.125
    epsilon: float = 0.004
    case: int = 0
    A: float = 1.0
    gamma: float = 1.4
    cfl: float = 0.1
    T: float = 1.0
    output_times: tuple[float, ...] | None = None
    rho_floor_init: float = 1e-10
    rho_floor_limiter: float = 1e-13
    poisson_tol: float = 1e-10
    peak_tau: float = 0.3
    peak_window: float = 0.05
    peak_min_size: int = 2
    out_dir: str = "runs"
    label: str = "run"

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and self.a > 0.0):
            raise ConfigError(f"a must be positive, got {self.a}")
        if self.N < 2 or self.N % 2 != 0:
            raise ConfigError(f"N must be even and >= 2, got {self.N}")
        try:
            self.vorticity_params()
            self.fluid_params()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.T < 0.0 or not math.isfinite(self.T):
            raise ConfigError(f"T must be non-negative, got {self.T}")
        if not 0.0 < self.cfl <= 1.0 / 3.0 + 1e-15:
            raise ConfigError(f"cfl must lie in (0, 1/3], got {self.cfl}")
        for key in ("rho_floor_init", "rho_floor_limiter", "poisson_tol", "peak_tau", "peak_window"):
            val = getattr(self, key)
            if not (math.isfinite(val) and val > 0.0):
                raise ConfigError(f"{key} must be positive, got {val}")
        if self.peak_tau >= 1.0:
            raise ConfigError(f"peak_tau must lie in (0, 1), got {self.peak_tau}")
        if self.peak_min_size < 1:
            raise ConfigError(f"peak_min_size must be >= 1, got {self.peak_min_size}")
        if self.output_times is not None:
            object.__setattr__(self, "output_times", tuple(float(t) for t in self.output_times))
            for t in self.output_times:
                if not (math.isfinite(t) and 0.0 <= t <= self.T):
                    raise ConfigError(f"output time {t} outside [0, T={self.T}]")
            if list(self.output_times) != sorted(set(self.output_times)):
                raise ConfigError("output_times must be strictly increasing")
        if not self.label:
            raise ConfigError("label must be non-empty")

    @property
    def theta0(self) -> float:
        return self.theta0_over_pi * math.pi

    def resolved_output_times(self) -> tuple[float, ...]:
        return self.output_times if self.output_times is not None else (self.T,)

    def vorticity_params(self, case: int | None = None) -> VorticityParams:
        return VorticityParams(
            alpha=self.alpha,
            theta0=self.theta0,
            epsilon=self.epsilon,
            case=self.case if case is None else case,
        )

    def fluid_params(self) -> FluidParams:
        return FluidParams(beta=self.beta, A=self.A, gamma=self.gamma)

    def with_updates(self, **kwargs) -> "ExperimentConfig":
        return replace(self, **kwargs)


def parse_config(text: str) -> ExperimentConfig:
    """Parse flat "key = value" lines; '#' starts a comment, blank lines skipped."""
    data: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _CONVERTERS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in data:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        if not value:
            raise ConfigError(f"line {lineno}: empty value for {key!r}")
        try:
            data[key] = _CONVERTERS[key](value)
        except ValueError:
            raise ConfigError(f"line {lineno}: cannot parse value for {key!r}: {value!r}") from None
    return ExperimentConfig(**data)


def serialize_config(config: ExperimentConfig) -> str:
    """Emit the full configuration in parse_config format, defaults included."""
    lines = []
    for f in dc_fields(config):
        val = getattr(config, f.name)
        if f.name == "output_times":
            val = ",".join(repr(t) for t in config.resolved_output_times())
        elif isinstance(val, float):
            val = repr(val)
        lines.append(f"{f.name} = {val}")
    return "\n".join(lines) + "\n"


def load_config(path: str | Path) -> ExperimentConfig:
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {p}")
    return parse_config(p.read_text())


def save_config(config: ExperimentConfig, path: str | Path) -> None:
    Path(path).write_text(serialize_config(config))

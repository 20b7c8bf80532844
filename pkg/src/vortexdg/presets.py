"""Named experiment presets at desk scale, with a flag for full-scale runs.

Desk scale keeps every preset under roughly a minute per run by using
N = 100; full scale restores the resolution the experiments were
designed at.  Each preset fixes the initial-data family and the horizon;
everything else follows the config defaults.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import ConfigError, ExperimentConfig

__all__ = ["Preset", "PRESETS", "list_presets", "preset_config"]

_DESK_N = 100
_FULL_N = 200


@dataclass(frozen=True)
class Preset:
    """kind "pair" runs Cases 0 and 2 and tracks their L1 vorticity gap;
    kind "sweep" varies sweep_key over sweep_values (Case 2 runs);
    kind "refinement" reruns one setup on a mesh ladder against a
    reference mesh and reports L2 density gaps."""

    name: str
    kind: str
    description: str
    overrides: dict
    full_overrides: dict
    sweep_key: str | None = None
    sweep_values: tuple[float, ...] | None = None
    full_sweep_values: tuple[float, ...] | None = None


def _pair(name, description, overrides, full_overrides=None):
    return Preset(
        name=name,
        kind="pair",
        description=description,
        overrides={"N": _DESK_N, **overrides},
        full_overrides={"N": _FULL_N, **overrides, **(full_overrides or {})},
    )


_P = [
    _pair(
        "example1",
        "density r**1, vorticity decay 0.95: both mollifications give one spiral",
        {"beta": 1.0, "alpha": 0.95, "T": 1.0, "output_times": (0.5, 1.0)},
    ),
    _pair(
        "example2",
        "density r**0.5: mollifications still agree",
        {"beta": 0.5, "alpha": 0.95, "T": 1.0, "output_times": (0.5, 1.0)},
    ),
    _pair(
        "example3",
        "uniform density: plateau core gives one spiral, hollow core gives two",
        {"beta": 0.0, "alpha": 0.95, "T": 1.0, "output_times": (0.5, 1.0)},
    ),
    _pair(
        "example4",
        "slow vorticity decay 0.1 with near-uniform density, long horizon",
        {"beta": 0.1, "alpha": 0.1, "T": 6.0, "output_times": (1.0, 3.0, 6.0)},
    ),
    _pair(
        "example5",
        "vorticity decay 0.5: the two-spiral pair drifts apart over time",
        {"beta": 0.1, "alpha": 0.5, "T": 4.0, "output_times": (1.0, 2.0, 4.0)},
    ),
    _pair(
        "example6",
        "vorticity decay 0.75: cases separate within one time unit",
        {"beta": 0.1, "alpha": 0.75, "T": 3.0, "output_times": (1.0, 3.0)},
    ),
    _pair(
        "example7",
        "vorticity decay 1.2: strong singularity, cases separate early",
        {"beta": 0.1, "alpha": 1.2, "T": 1.0, "output_times": (0.5, 1.0)},
    ),
    Preset(
        name="example8",
        kind="sweep",
        description="very strong singularities: hollow-core runs across decay 1.3-1.7",
        overrides={"N": _DESK_N, "beta": 0.1, "case": 2, "T": 1.0},
        full_overrides={"N": _FULL_N, "beta": 0.1, "case": 2, "T": 1.0},
        sweep_key="alpha",
        sweep_values=(1.3, 1.5, 1.7),
    ),
    _pair(
        "example9",
        "narrow wedge pi/10: the two-spiral split persists",
        {"beta": 0.1, "theta0_over_pi": 0.1, "T": 1.0, "output_times": (0.5, 1.0)},
    ),
    _pair(
        "example10",
        "wide wedge pi/4: the split disappears",
        {"beta": 0.1, "theta0_over_pi": 0.25, "T": 1.0, "output_times": (0.5, 1.0)},
    ),
    _pair(
        "example11",
        "wide wedge pi/3: single spiral for both mollifications",
        {"beta": 0.1, "theta0_over_pi": 1.0 / 3.0, "T": 1.0, "output_times": (0.5, 1.0)},
    ),
    Preset(
        name="refinement-study",
        kind="refinement",
        description="mesh ladder for the hollow-core run, L2 density gap vs reference",
        overrides={"beta": 0.0, "case": 2, "T": 0.5},
        full_overrides={"beta": 0.0, "case": 2, "T": 1.0, "epsilon": 0.0005},
        sweep_key="N",
        sweep_values=(50, 100, 200, 400),
        full_sweep_values=(200, 400, 600, 1024),
    ),
    Preset(
        name="epsilon-study",
        kind="sweep",
        description="mollification radius ladder for the hollow-core run",
        overrides={"N": _DESK_N, "beta": 0.0, "case": 2, "T": 0.6, "output_times": (0.2, 0.6)},
        full_overrides={"N": 800, "beta": 0.0, "case": 2, "T": 0.6, "output_times": (0.2, 0.6)},
        sweep_key="epsilon",
        sweep_values=(0.006, 0.001, 0.0006),
    ),
    Preset(
        name="compressibility",
        kind="sweep",
        description="pressure stiffness ladder: spiral formation slows as A grows",
        overrides={"N": _DESK_N, "beta": 0.0, "case": 2, "T": 1.0},
        full_overrides={"N": _FULL_N, "beta": 0.0, "case": 2, "T": 1.0},
        sweep_key="A",
        sweep_values=(0.01, 0.1, 1.0, 10.0, 100.0, 1000.0),
    ),
]

PRESETS: dict[str, Preset] = {p.name: p for p in _P}


def list_presets() -> list[tuple[str, str]]:
    """(name, description) pairs in registry order."""
    return [(p.name, p.description) for p in PRESETS.values()]


def preset_config(name: str, paper_scale: bool = False) -> tuple[Preset, ExperimentConfig]:
    """The preset and its resolved base config at desk or full scale.

    For sweep/refinement presets the sweep values live on the returned
    Preset (full_sweep_values at full scale when the ladder itself
    changes).
    """
    if name not in PRESETS:
        known = ", ".join(PRESETS)
        raise ConfigError(f"unknown preset {name!r}; available: {known}")
    preset = PRESETS[name]
    overrides = preset.full_overrides if paper_scale else preset.overrides
    label = name if not paper_scale else f"{name}-full"
    cfg = ExperimentConfig(**overrides, label=label)
    return preset, cfg

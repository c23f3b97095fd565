"""Experiment descriptions: built-in scenarios and the config-file grammar.

A scenario file is flat ``key = value`` text.  Blank lines and lines starting
with ``#`` are ignored.  Values are decimal literals; list-valued keys take
comma-separated entries.  Recognized keys (defaults in parentheses):

    name                    (file stem)     scenario label
    num_sensors             (40)            array elements
    spacing_ratio           (0.5)           element spacing over wavelength
    soi_doa_deg             (90.0)          true DOA of the desired source
    soi_power               (1.0)           desired source power
    num_interferers         (9)             interferers drawn per trial
    interferer_power        (1.0)           per-interferer power
    interferer_doas_deg     (unset)         fixed DOAs; overrides the draw
    noise_power             (1.0)           white noise power
    num_snapshots           (500)
    num_trials              (100)
    mismatch_deg            (0.0)           offset added to the presumed SOI DOA
    master_seed             (12345)
    beamformers             (all built-ins) comma list, see below
    avf_mu0                 (0.01)          initial scalar factor
    avf_iterations          (3)             inner iterations per snapshot
    avf_exit_tolerance      (1e-8)
    sg_step_size            (0.6)           normalized-gradient step
    rls_forgetting          (0.998)
    rls_diagonal_load       (1e-2)
    cmv_avf_rank            (8)

Beamformer names: ccm-avf, ccm-sg, ccm-rls, cmv-sg, cmv-rls, cmv-avf,
mvdr-oracle.  Interferer DOAs, when not fixed, are drawn once per trial
uniformly on (20, 160) degrees excluding a +/-4 degree guard around the SOI.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace

import numpy as np

from .arrays import ArrayGeometry

__all__ = [
    "BeamformerSpec",
    "Scenario",
    "builtin_scenario",
    "builtin_scenario_names",
    "load_scenario_file",
    "draw_interferer_doas",
]

KNOWN_KINDS = ("ccm-avf", "ccm-sg", "ccm-rls", "cmv-sg", "cmv-rls", "cmv-avf", "mvdr-oracle")

DOA_LOW = 20.0
DOA_HIGH = 160.0
DOA_GUARD = 4.0


@dataclass(frozen=True)
class BeamformerSpec:
    """One beamformer to run; params are tuning overrides for its kind."""

    kind: str
    params: tuple = ()

    def __post_init__(self):
        if self.kind not in KNOWN_KINDS:
            raise ValueError(f"unknown beamformer {self.kind!r}; expected one of {KNOWN_KINDS}")
        object.__setattr__(self, "params", tuple(sorted(dict(self.params).items())))

    @property
    def label(self) -> str:
        return "MVDR" if self.kind == "mvdr-oracle" else self.kind.upper()

    def param(self, key, default):
        return dict(self.params).get(key, default)


@dataclass(frozen=True)
class Scenario:
    """Full description of one Monte Carlo experiment."""

    name: str
    geometry: ArrayGeometry = ArrayGeometry(40, 0.5)
    soi_doa_deg: float = 90.0
    soi_power: float = 1.0
    num_interferers: int = 9
    interferer_power: float = 1.0
    interferer_doas_deg: tuple | None = None
    noise_power: float = 1.0
    num_snapshots: int = 500
    num_trials: int = 100
    mismatch_deg: float = 0.0
    master_seed: int = 12345
    beamformers: tuple = field(
        default_factory=lambda: tuple(BeamformerSpec(k) for k in KNOWN_KINDS)
    )

    def __post_init__(self):
        if self.num_snapshots < 1:
            raise ValueError("num_snapshots must be >= 1")
        if self.num_trials < 1:
            raise ValueError("num_trials must be >= 1")
        if not 0.0 < self.soi_doa_deg < 180.0:
            raise ValueError("soi_doa_deg must lie in (0, 180)")
        if not 0.0 < self.soi_doa_deg + self.mismatch_deg < 180.0:
            raise ValueError("presumed SOI DOA (soi_doa_deg + mismatch_deg) must lie in (0, 180)")
        if self.soi_power <= 0 or self.interferer_power <= 0:
            raise ValueError("source powers must be > 0")
        if self.noise_power < 0:
            raise ValueError("noise_power must be >= 0")
        if self.num_interferers < 0:
            raise ValueError("num_interferers must be >= 0")
        if self.interferer_doas_deg is not None:
            doas = tuple(float(d) for d in self.interferer_doas_deg)
            if len(doas) != self.num_interferers:
                raise ValueError("interferer_doas_deg length must equal num_interferers")
            object.__setattr__(self, "interferer_doas_deg", doas)
        if not self.beamformers:
            raise ValueError("at least one beamformer is required")
        labels = [spec.label for spec in self.beamformers]
        if len(set(labels)) != len(labels):
            raise ValueError("beamformer labels must be unique")

    def canonical_text(self) -> str:
        """Stable serialization used for hashing and reproducibility metadata."""
        lines = [
            f"name={self.name}",
            f"num_sensors={self.geometry.num_sensors}",
            f"spacing_ratio={self.geometry.spacing_ratio!r}",
            f"soi_doa_deg={self.soi_doa_deg!r}",
            f"soi_power={self.soi_power!r}",
            f"num_interferers={self.num_interferers}",
            f"interferer_power={self.interferer_power!r}",
            f"interferer_doas_deg={self.interferer_doas_deg!r}",
            f"noise_power={self.noise_power!r}",
            f"num_snapshots={self.num_snapshots}",
            f"num_trials={self.num_trials}",
            f"mismatch_deg={self.mismatch_deg!r}",
            f"master_seed={self.master_seed}",
        ]
        for spec in self.beamformers:
            lines.append(f"beamformer={spec.kind}{dict(spec.params)!r}")
        return "\n".join(lines)

    def sha256(self) -> str:
        return hashlib.sha256(self.canonical_text().encode()).hexdigest()[:16]


def draw_interferer_doas(rng: np.random.Generator, count: int, soi_doa_deg: float) -> tuple:
    """Per-trial interferer placement: uniform, guarded around the SOI."""
    out: list[float] = []
    while len(out) < count:
        cand = float(rng.uniform(DOA_LOW, DOA_HIGH))
        if abs(cand - soi_doa_deg) < DOA_GUARD:
            continue
        if any(abs(cand - d) < 1e-9 for d in out):
            continue
        out.append(cand)
    return tuple(out)


def _default_beamformers(tuning: dict) -> tuple:
    def spec(kind):
        params = {}
        if kind == "ccm-avf":
            params = {
                "mu0": tuning.get("avf_mu0", 0.01),
                "iterations": int(tuning.get("avf_iterations", 3)),
                "exit_tolerance": tuning.get("avf_exit_tolerance", 1e-8),
            }
        elif kind.endswith("-sg"):
            params = {"step_size": tuning.get("sg_step_size", 0.6)}
        elif kind.endswith("-rls"):
            params = {
                "forgetting": tuning.get("rls_forgetting", 0.998),
                "diagonal_load": tuning.get("rls_diagonal_load", 1e-2),
            }
        elif kind == "cmv-avf":
            params = {"rank": int(tuning.get("cmv_avf_rank", 8))}
        return BeamformerSpec(kind, tuple(params.items()))

    return spec


def _build_beamformers(names, tuning: dict) -> tuple:
    maker = _default_beamformers(tuning)
    return tuple(maker(name) for name in names)


_FIG1A_BEAMFORMERS = ("ccm-avf", "ccm-sg", "ccm-rls", "cmv-sg", "cmv-rls", "cmv-avf", "mvdr-oracle")


def builtin_scenario(name: str) -> Scenario:
    """Built-in experiment setups: fig1a, fig1b, fig2.

    All use a 40-element half-wavelength array, 10 unit-power BPSK sources
    (desired source at 90 degrees plus 9 per-trial interferers) in unit-power
    noise.  fig1b adds a 1-degree offset to the presumed SOI DOA.  fig2 keeps
    only the auxiliary-vector beamformers and is meant for iteration sweeps.
    """
    base = Scenario(
        name="fig1a",
        beamformers=_build_beamformers(_FIG1A_BEAMFORMERS, {}),
    )
    if name == "fig1a":
        return base
    if name == "fig1b":
        return replace(base, name="fig1b", mismatch_deg=1.0)
    if name == "fig2":
        return replace(
            base, name="fig2", beamformers=_build_beamformers(("ccm-avf", "cmv-avf"), {})
        )
    raise ValueError(f"unknown built-in scenario {name!r}; try one of {builtin_scenario_names()}")


def builtin_scenario_names() -> tuple:
    return ("fig1a", "fig1b", "fig2")


_SCALAR_KEYS = {
    "num_sensors": int,
    "spacing_ratio": float,
    "soi_doa_deg": float,
    "soi_power": float,
    "num_interferers": int,
    "interferer_power": float,
    "noise_power": float,
    "num_snapshots": int,
    "num_trials": int,
    "mismatch_deg": float,
    "master_seed": int,
}
_TUNING_KEYS = {
    "avf_mu0": float,
    "avf_iterations": int,
    "avf_exit_tolerance": float,
    "sg_step_size": float,
    "rls_forgetting": float,
    "rls_diagonal_load": float,
    "cmv_avf_rank": int,
}


def parse_scenario_text(text: str, name: str = "custom") -> Scenario:
    """Parse the flat key = value grammar into a Scenario."""
    values: dict = {}
    tuning: dict = {}
    names = list(_FIG1A_BEAMFORMERS)
    fixed_doas = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip().lower()
        value = value.strip()
        try:
            if key == "name":
                name = value
            elif key == "beamformers":
                names = [v.strip().lower() for v in value.split(",") if v.strip()]
            elif key == "interferer_doas_deg":
                fixed_doas = tuple(float(v) for v in value.split(",") if v.strip())
            elif key in _SCALAR_KEYS:
                values[key] = _SCALAR_KEYS[key](value)
            elif key in _TUNING_KEYS:
                tuning[key] = _TUNING_KEYS[key](value)
            else:
                raise ValueError(f"line {lineno}: unknown key {key!r}")
        except ValueError as exc:
            if "unknown key" in str(exc) or "expected" in str(exc):
                raise
            raise ValueError(f"line {lineno}: bad value for {key!r}: {value!r}") from None
    geometry = ArrayGeometry(values.pop("num_sensors", 40), values.pop("spacing_ratio", 0.5))
    if fixed_doas is not None:
        values["interferer_doas_deg"] = fixed_doas
        values.setdefault("num_interferers", len(fixed_doas))
    return Scenario(
        name=name,
        geometry=geometry,
        beamformers=_build_beamformers(names, tuning),
        **values,
    )


def load_scenario_file(path) -> Scenario:
    from pathlib import Path

    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ValueError(f"cannot read scenario file {path}: {exc}") from exc
    return parse_scenario_text(text, name=p.stem)

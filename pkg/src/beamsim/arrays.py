"""Narrowband uniform linear array signal model.

Snapshots follow x(i) = A(theta) s(i) + n(i) where A stacks the steering
vectors of all sources, s(i) holds the source symbols and n(i) is circular
complex white Gaussian noise.  DOAs are measured from the array axis, in
degrees at the API boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ArrayGeometry",
    "SourceSet",
    "Snapshot",
    "steering_vector",
    "steering_matrix",
    "generate_snapshot",
    "generate_snapshots",
    "beamformer_output",
]


@dataclass(frozen=True)
class ArrayGeometry:
    """Uniform linear array with `num_sensors` elements.

    `spacing_ratio` is the inter-element distance over the carrier
    wavelength (0.5 for the usual half-wavelength array).
    """

    num_sensors: int
    spacing_ratio: float = 0.5

    def __post_init__(self):
        if int(self.num_sensors) != self.num_sensors or self.num_sensors < 1:
            raise ValueError(f"num_sensors must be an integer >= 1, got {self.num_sensors}")
        if not self.spacing_ratio > 0:
            raise ValueError(f"spacing_ratio must be > 0, got {self.spacing_ratio}")


@dataclass(frozen=True)
class SourceSet:
    """Far-field narrowband sources; index 0 is the signal of interest.

    Powers are per-source symbol variances.  All sources use the same
    constant-modulus modulation (only BPSK is implemented).
    """

    doas_deg: tuple
    powers: tuple
    modulation: str = "bpsk"

    def __post_init__(self):
        object.__setattr__(self, "doas_deg", tuple(float(d) for d in self.doas_deg))
        object.__setattr__(self, "powers", tuple(float(p) for p in self.powers))
        if len(self.doas_deg) < 1:
            raise ValueError("at least one source is required")
        if len(self.powers) != len(self.doas_deg):
            raise ValueError("powers and doas_deg must have the same length")
        if any(p <= 0 for p in self.powers):
            raise ValueError("source powers must be > 0")
        if len(set(self.doas_deg)) != len(self.doas_deg):
            raise ValueError("source DOAs must be pairwise distinct")
        if self.modulation.lower() != "bpsk":
            raise ValueError(f"unsupported modulation {self.modulation!r}")

    @property
    def num_sources(self) -> int:
        return len(self.doas_deg)


@dataclass
class Snapshot:
    """One array observation: received vector and the symbols that produced it."""

    received: np.ndarray
    true_symbols: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))


def steering_vector(geometry: ArrayGeometry, doa_deg: float) -> np.ndarray:
    """Array phase response for a plane wave from `doa_deg`.

    Entry n (0-based) is exp(-2j*pi*n*spacing_ratio*cos(theta)).  Entries
    have unit modulus and the first entry is exactly 1, so the squared
    Euclidean norm equals the number of sensors.

    Raises
    ------
    ValueError
        If the DOA is outside the open interval (0, 180) degrees.
    """
    if not 0.0 < doa_deg < 180.0:
        raise ValueError(f"DOA must lie in (0, 180) degrees, got {doa_deg}")
    theta = np.deg2rad(doa_deg)
    n = np.arange(geometry.num_sensors)
    return np.exp(-2j * np.pi * n * geometry.spacing_ratio * np.cos(theta))


def steering_matrix(geometry: ArrayGeometry, doas_deg) -> np.ndarray:
    """Stack steering vectors column-wise for a sequence of DOAs."""
    return np.column_stack([steering_vector(geometry, d) for d in doas_deg])


def _draw_symbols(sources: SourceSet, num: int, rng: np.random.Generator) -> np.ndarray:
    # BPSK: sigma_k * b with b uniform on {+1, -1}; real in complex baseband.
    signs = 2.0 * rng.integers(0, 2, size=(sources.num_sources, num)) - 1.0
    amps = np.sqrt(np.asarray(sources.powers))[:, None]
    return (amps * signs).astype(complex)


def _draw_noise(m: int, noise_power: float, num: int, rng: np.random.Generator) -> np.ndarray:
    # Circular complex Gaussian, covariance noise_power * I: each of the
    # real and imaginary parts carries half the power.
    scale = np.sqrt(noise_power / 2.0)
    return scale * (rng.standard_normal((m, num)) + 1j * rng.standard_normal((m, num)))


def generate_snapshots(
    geometry: ArrayGeometry,
    sources: SourceSet | None,
    noise_power: float,
    num_snapshots: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Draw a block of snapshots; returns (received m x N, symbols q x N).

    `sources=None` generates pure noise (q = 0).  Draw order is fixed
    (symbols first, then noise) so results are reproducible for a given
    seeded generator.
    """
    if noise_power < 0:
        raise ValueError("noise_power must be >= 0")
    m = geometry.num_sensors
    if sources is None:
        symbols = np.zeros((0, num_snapshots), dtype=complex)
        clean = np.zeros((m, num_snapshots), dtype=complex)
    else:
        symbols = _draw_symbols(sources, num_snapshots, rng)
        clean = steering_matrix(geometry, sources.doas_deg) @ symbols
    received = clean if noise_power == 0 else clean + _draw_noise(m, noise_power, num_snapshots, rng)
    return received, symbols


def generate_snapshot(
    geometry: ArrayGeometry,
    sources: SourceSet | None,
    noise_power: float,
    rng: np.random.Generator,
) -> Snapshot:
    """Draw a single snapshot of the model."""
    received, symbols = generate_snapshots(geometry, sources, noise_power, 1, rng)
    return Snapshot(received=received[:, 0], true_symbols=symbols[:, 0])


def beamformer_output(weights: np.ndarray, received: np.ndarray) -> complex:
    """Beamformer output y = w^H x (weights enter conjugated)."""
    w = np.asarray(weights)
    x = received.received if isinstance(received, Snapshot) else np.asarray(received)
    if w.shape != x.shape:
        raise ValueError(f"weight/snapshot shape mismatch: {w.shape} vs {x.shape}")
    return complex(np.vdot(w, x))

"""Output SINR, trial aggregation, and beampatterns."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arrays import ArrayGeometry, SourceSet, steering_vector

__all__ = [
    "SinrTrace",
    "interference_noise_covariance",
    "output_sinr",
    "sinr_trace_linear",
    "aggregate_trials",
    "beampattern",
]


@dataclass
class SinrTrace:
    """Mean output SINR (dB) per snapshot index, averaged over trials."""

    per_snapshot_db: np.ndarray
    trials: int
    label: str


def interference_noise_covariance(
    sources: SourceSet, geometry: ArrayGeometry, noise_power: float
) -> np.ndarray:
    """True covariance of interference plus noise (sources with index >= 1)."""
    m = geometry.num_sensors
    r = noise_power * np.eye(m, dtype=complex)
    for doa, power in zip(sources.doas_deg[1:], sources.powers[1:]):
        a = steering_vector(geometry, doa)
        r += power * np.outer(a, a.conj())
    return r


def output_sinr(
    w: np.ndarray, sources: SourceSet, geometry: ArrayGeometry, noise_power: float
) -> float:
    """Clairvoyant output SINR in dB for a weight vector.

    Uses the true scenario parameters: desired power sigma_0^2 |w^H a0|^2
    over w^H R_in w with R_in the true interference-plus-noise covariance.
    Returns +inf for an interference- and noise-free scenario.
    """
    w = np.asarray(w, dtype=complex)
    if not np.any(w):
        raise ValueError("weight vector must be nonzero")
    a0 = steering_vector(geometry, sources.doas_deg[0])
    r_in = interference_noise_covariance(sources, geometry, noise_power)
    num = sources.powers[0] * abs(np.vdot(w, a0)) ** 2
    den = float(np.vdot(w, r_in @ w).real)
    if den == 0.0:
        return float("inf")
    return 10.0 * np.log10(num / den)


def sinr_trace_linear(
    weights: np.ndarray, a0_true: np.ndarray, r_in: np.ndarray, soi_power: float
) -> np.ndarray:
    """Linear-scale SINR for a trajectory of weight vectors (rows)."""
    wc = weights.conj()
    num = soi_power * np.abs(wc @ a0_true) ** 2
    den = np.einsum("ij,ij->i", wc @ r_in, weights).real
    with np.errstate(divide="ignore"):
        return num / den


def aggregate_trials(traces_linear, label: str = "") -> SinrTrace:
    """Average linear-scale per-trial SINR series, then convert to dB."""
    traces = [np.asarray(t, dtype=float) for t in traces_linear]
    if not traces:
        raise ValueError("at least one trial trace is required")
    lengths = {t.shape for t in traces}
    if len(lengths) != 1:
        raise ValueError(f"trial traces have mismatched lengths: {sorted(lengths)}")
    mean_linear = np.mean(np.stack(traces), axis=0)
    with np.errstate(divide="ignore"):
        db = 10.0 * np.log10(mean_linear)
    return SinrTrace(per_snapshot_db=db, trials=len(traces), label=label)


def beampattern(w: np.ndarray, geometry: ArrayGeometry, grid_deg) -> np.ndarray:
    """Array response 20 log10 |w^H a(theta)| per grid DOA, in dB."""
    w = np.asarray(w, dtype=complex)
    resp = np.empty(len(grid_deg))
    with np.errstate(divide="ignore"):
        for i, doa in enumerate(grid_deg):
            resp[i] = 20.0 * np.log10(abs(np.vdot(w, steering_vector(geometry, doa))))
    return resp

"""Config-driven Monte Carlo runner with deterministic CSV output.

Each trial derives its own random generator from (master_seed, trial index),
draws the interferer placement and the full snapshot block up front, and
streams the identical data through every configured beamformer.  Clairvoyant
output SINR is recorded per snapshot, averaged over trials in the linear
domain, and written as CSV: ``#``-prefixed metadata lines, a header line,
then one row per snapshot with 6-decimal dB values and LF line endings.

Trials may run in parallel (BEAMFORM_THREADS caps the worker count); results
are reduced in trial order so parallelism never changes the output bytes.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import __version__
from .arrays import ArrayGeometry, SourceSet, generate_snapshots, steering_vector
from .baselines import AdaptiveFilterConfig, FixedWeightBeamformer, make_baseline, mvdr_oracle
from .ccm_avf import AvfConfig, CcmAvfBeamformer
from .metrics import aggregate_trials, interference_noise_covariance, sinr_trace_linear
from .scenarios import BeamformerSpec, Scenario, draw_interferer_doas

__all__ = ["ResultTable", "run_scenario", "run_k_sweep", "beampattern_table"]

logger = logging.getLogger(__name__)


@dataclass
class ResultTable:
    """Rectangular results: one x column plus one dB column per beamformer."""

    x_name: str
    x_values: np.ndarray
    labels: list
    values: np.ndarray  # shape (len(x_values), len(labels))
    metadata: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    def column(self, label: str) -> np.ndarray:
        return self.values[:, self.labels.index(label)]

    def to_csv_text(self) -> str:
        lines = [f"# {key}={value}" for key, value in self.metadata.items()]
        lines.append(",".join([self.x_name] + [f"{lab}_dB" for lab in self.labels]))
        for xi, row in zip(self.x_values, self.values):
            x_text = f"{int(xi)}" if float(xi).is_integer() else f"{xi:.4f}"
            lines.append(",".join([x_text] + [f"{v:.6f}" for v in row]))
        return "\n".join(lines) + "\n"

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv_text())


def _avf_config(spec: BeamformerSpec) -> AvfConfig:
    return AvfConfig(
        mu0=spec.param("mu0", 0.01),
        max_iterations=int(spec.param("iterations", 3)),
        exit_tolerance=spec.param("exit_tolerance", 1e-8),
    )


def _make_beamformer(spec: BeamformerSpec, presumed: np.ndarray, true_a0: np.ndarray, r_in: np.ndarray):
    if spec.kind == "ccm-avf":
        return CcmAvfBeamformer(presumed, _avf_config(spec))
    if spec.kind == "mvdr-oracle":
        # clairvoyant reference: true steering vector and true covariance
        return FixedWeightBeamformer(mvdr_oracle(r_in, true_a0))
    criterion, algorithm = spec.kind.split("-")
    cfg = AdaptiveFilterConfig(
        criterion=criterion,
        algorithm=algorithm,
        step_size=spec.param("step_size", 0.6),
        forgetting_factor=spec.param("forgetting", 0.998),
        rank=int(spec.param("rank", 8)),
        diagonal_load=spec.param("diagonal_load", 1e-2),
    )
    return make_baseline(presumed, cfg)


def _trial_sources(scenario: Scenario, rng: np.random.Generator) -> SourceSet:
    if scenario.interferer_doas_deg is not None:
        doas = scenario.interferer_doas_deg
    else:
        doas = draw_interferer_doas(rng, scenario.num_interferers, scenario.soi_doa_deg)
    return SourceSet(
        doas_deg=(scenario.soi_doa_deg,) + tuple(doas),
        powers=(scenario.soi_power,) + (scenario.interferer_power,) * len(doas),
    )


def run_trial(scenario: Scenario, trial_index: int):
    """One Monte Carlo trial; returns (linear SINR trials x N, diagnostics)."""
    rng = np.random.default_rng((scenario.master_seed, trial_index))
    geometry = scenario.geometry
    sources = _trial_sources(scenario, rng)
    received, _ = generate_snapshots(geometry, sources, scenario.noise_power, scenario.num_snapshots, rng)

    true_a0 = steering_vector(geometry, scenario.soi_doa_deg)
    presumed = steering_vector(geometry, scenario.soi_doa_deg + scenario.mismatch_deg)
    r_in = interference_noise_covariance(sources, geometry, scenario.noise_power)

    specs = scenario.beamformers
    beamformers = [_make_beamformer(spec, presumed, true_a0, r_in) for spec in specs]
    anchors = [true_a0 if spec.kind == "mvdr-oracle" else presumed for spec in specs]

    n, b = scenario.num_snapshots, len(specs)
    trajectories = np.empty((b, n, geometry.num_sensors), dtype=complex)
    max_violation = np.zeros(b)
    for i in range(n):
        x = received[:, i]
        for j, bf in enumerate(beamformers):
            w = bf.update(x)
            trajectories[j, i] = w
            violation = abs(np.vdot(w, anchors[j]) - 1.0)
            if violation > max_violation[j]:
                max_violation[j] = violation

    linear = np.empty((b, n))
    for j in range(b):
        linear[j] = sinr_trace_linear(trajectories[j], true_a0, r_in, scenario.soi_power)

    diag = {"max_constraint_violation": max_violation}
    cos_sum = cos_count = exits = 0.0
    for bf in beamformers:
        if isinstance(bf, CcmAvfBeamformer):
            cos_sum += bf.cosine_sum
            cos_count += bf.cosine_count
            exits += bf.early_exits
    diag["avf_cosine_sum"] = cos_sum
    diag["avf_cosine_count"] = cos_count
    diag["avf_early_exits"] = exits
    return linear, diag


def _worker(args):
    scenario, trial_index = args
    return trial_index, run_trial(scenario, trial_index)


def _num_workers(trials: int) -> int:
    env = os.environ.get("BEAMFORM_THREADS", "").strip()
    if env:
        try:
            cap = int(env)
        except ValueError:
            raise ValueError(f"BEAMFORM_THREADS must be an integer, got {env!r}") from None
        cap = max(1, cap)
    else:
        cap = os.cpu_count() or 1
    return max(1, min(cap, trials))


def run_scenario(scenario: Scenario) -> ResultTable:
    """Run all trials and aggregate mean linear SINR per snapshot, in dB."""
    trials = scenario.num_trials
    per_trial = [None] * trials
    diags = [None] * trials
    workers = _num_workers(trials)
    if workers == 1:
        for t in range(trials):
            per_trial[t], diags[t] = run_trial(scenario, t)
            _log_progress(scenario, t + 1)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            done = 0
            for t, result in pool.map(_worker, ((scenario, t) for t in range(trials))):
                per_trial[t], diags[t] = result
                done += 1
                _log_progress(scenario, done)

    labels = [spec.label for spec in scenario.beamformers]
    traces = [
        aggregate_trials([trial[j] for trial in per_trial], label=lab)
        for j, lab in enumerate(labels)
    ]
    values = np.column_stack([t.per_snapshot_db for t in traces])  # N x B
    diagnostics = {
        "max_constraint_violation": {
            lab: float(max(d["max_constraint_violation"][j] for d in diags))
            for j, lab in enumerate(labels)
        },
        "avf_cosine_sum": float(sum(d["avf_cosine_sum"] for d in diags)),
        "avf_cosine_count": float(sum(d["avf_cosine_count"] for d in diags)),
        "avf_early_exits": float(sum(d["avf_early_exits"] for d in diags)),
    }
    return ResultTable(
        x_name="snapshot",
        x_values=np.arange(1, scenario.num_snapshots + 1),
        labels=labels,
        values=values,
        metadata=_metadata(scenario),
        diagnostics=diagnostics,
    )


def _log_progress(scenario: Scenario, done: int) -> None:
    total = scenario.num_trials
    step = max(1, total // 10)
    if done % step == 0 or done == total:
        logger.info("%s: %d/%d trials complete", scenario.name, done, total)


def _metadata(scenario: Scenario) -> dict:
    return {
        "scenario": scenario.name,
        "scenario_sha256": scenario.sha256(),
        "seed": scenario.master_seed,
        "trials": scenario.num_trials,
        "snapshots": scenario.num_snapshots,
        "version": __version__,
    }


def _with_iterations(scenario: Scenario, k: int) -> Scenario:
    specs = []
    for spec in scenario.beamformers:
        params = dict(spec.params)
        if spec.kind == "ccm-avf":
            params["iterations"] = k
        elif spec.kind == "cmv-avf":
            params["rank"] = k
        specs.append(BeamformerSpec(spec.kind, tuple(params.items())))
    return replace(scenario, beamformers=tuple(specs))


def run_k_sweep(scenario: Scenario, k_values) -> ResultTable:
    """Re-run the scenario per iteration count; report final-snapshot SINR.

    The iteration count applies to the auxiliary-vector beamformers (inner
    iterations for ccm-avf, recursion rank for cmv-avf).  Seeds are shared
    across the sweep so every K sees identical data.
    """
    k_values = [int(k) for k in k_values]
    if not k_values or any(k < 1 for k in k_values):
        raise ValueError("k_values must be a non-empty list of integers >= 1")
    labels = [spec.label for spec in scenario.beamformers]
    rows = []
    for k in k_values:
        table = run_scenario(_with_iterations(scenario, k))
        rows.append(table.values[-1])
        logger.info("%s: K=%d done", scenario.name, k)
    meta = _metadata(scenario)
    meta["sweep_k"] = ",".join(str(k) for k in k_values)
    return ResultTable(
        x_name="K",
        x_values=np.asarray(k_values),
        labels=labels,
        values=np.vstack(rows),
        metadata=meta,
    )


def beampattern_table(scenario: Scenario, grid_points: int = 721) -> ResultTable:
    """Final-weight beampatterns from trial 0, on a DOA grid."""
    from .metrics import beampattern

    rng = np.random.default_rng((scenario.master_seed, 0))
    sources = _trial_sources(scenario, rng)
    received, _ = generate_snapshots(
        scenario.geometry, sources, scenario.noise_power, scenario.num_snapshots, rng
    )
    presumed = steering_vector(scenario.geometry, scenario.soi_doa_deg + scenario.mismatch_deg)
    true_a0 = steering_vector(scenario.geometry, scenario.soi_doa_deg)
    r_in = interference_noise_covariance(sources, scenario.geometry, scenario.noise_power)
    finals = []
    for spec in scenario.beamformers:
        bf = _make_beamformer(spec, presumed, true_a0, r_in)
        w = None
        for i in range(scenario.num_snapshots):
            w = bf.update(received[:, i])
        finals.append(w)
    grid = np.linspace(1.0, 179.0, grid_points)
    values = np.column_stack([beampattern(w, scenario.geometry, grid) for w in finals])
    meta = _metadata(scenario)
    meta["interferer_doas_deg"] = ",".join(f"{d:.4f}" for d in sources.doas_deg[1:])
    return ResultTable(
        x_name="doa_deg",
        x_values=grid,
        labels=[spec.label for spec in scenario.beamformers],
        values=values,
        metadata=meta,
    )

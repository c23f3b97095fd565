import numpy as np
import pytest

from dataclasses import replace

from beamsim.arrays import ArrayGeometry, generate_snapshots, SourceSet, steering_vector
from beamsim.ccm_avf import AvfConfig, CcmAvfBeamformer
from beamsim.harness import beampattern_table, run_k_sweep, run_scenario, run_trial
from beamsim.metrics import output_sinr
from beamsim.scenarios import BeamformerSpec, Scenario


def _toy_scenario(**overrides):
    defaults = dict(
        name="toy",
        geometry=ArrayGeometry(8),
        soi_doa_deg=90.0,
        num_interferers=2,
        noise_power=1.0,
        num_snapshots=30,
        num_trials=3,
        master_seed=101,
        beamformers=(
            BeamformerSpec("ccm-avf", (("iterations", 3),)),
            BeamformerSpec("cmv-avf", (("rank", 4),)),
            BeamformerSpec("mvdr-oracle"),
        ),
    )
    defaults.update(overrides)
    return Scenario(**defaults)


def test_single_noiseless_snapshot_composes_with_metrics(monkeypatch):
    monkeypatch.setenv("BEAMFORM_THREADS", "1")
    scenario = _toy_scenario(
        num_interferers=0,
        noise_power=0.0,
        num_snapshots=1,
        num_trials=1,
        beamformers=(BeamformerSpec("ccm-avf", (("iterations", 3),)),),
    )
    table = run_scenario(scenario)

    # rebuild the identical trial data and drive the beamformer manually
    rng = np.random.default_rng((scenario.master_seed, 0))
    sources = SourceSet((90.0,), (1.0,))
    received, _ = generate_snapshots(scenario.geometry, sources, 0.0, 1, rng)
    bf = CcmAvfBeamformer(steering_vector(scenario.geometry, 90.0), AvfConfig())
    w = bf.update(received[:, 0])
    expected = output_sinr(w, sources, scenario.geometry, 0.0)
    assert table.values[0, 0] == expected  # both are +inf here


def test_csv_bytes_reproducible_and_parallel_invariant(monkeypatch):
    scenario = _toy_scenario()
    monkeypatch.setenv("BEAMFORM_THREADS", "1")
    serial = run_scenario(scenario).to_csv_text()
    again = run_scenario(scenario).to_csv_text()
    monkeypatch.setenv("BEAMFORM_THREADS", "2")
    parallel = run_scenario(scenario).to_csv_text()
    assert serial == again
    assert serial == parallel


def test_all_beamformers_see_identical_data(monkeypatch):
    monkeypatch.setenv("BEAMFORM_THREADS", "1")
    solo = run_scenario(_toy_scenario(beamformers=(BeamformerSpec("cmv-avf", (("rank", 4),)),)))
    joint = run_scenario(_toy_scenario())
    assert np.array_equal(solo.column("CMV-AVF"), joint.column("CMV-AVF"))


def test_csv_layout_and_metadata():
    scenario = _toy_scenario(num_trials=1, num_snapshots=4)
    table = run_scenario(scenario)
    text = table.to_csv_text()
    lines = text.splitlines()
    comments = [ln for ln in lines if ln.startswith("#")]
    assert any("scenario=toy" in c for c in comments)
    assert any("scenario_sha256=" in c for c in comments)
    assert any("seed=101" in c for c in comments)
    assert any("version=" in c for c in comments)
    header = next(ln for ln in lines if not ln.startswith("#"))
    assert header == "snapshot,CCM-AVF_dB,CMV-AVF_dB,MVDR_dB"
    data = [ln for ln in lines if not ln.startswith("#")][1:]
    assert len(data) == 4
    assert data[0].split(",")[0] == "1"
    for cell in data[0].split(",")[1:]:
        float(cell)
    assert text.endswith("\n")
    assert "\r" not in text


def test_diagnostics_track_constraint_violation(monkeypatch):
    monkeypatch.setenv("BEAMFORM_THREADS", "1")
    table = run_scenario(_toy_scenario())
    viol = table.diagnostics["max_constraint_violation"]
    assert set(viol) == {"CCM-AVF", "CMV-AVF", "MVDR"}
    assert all(v < 1e-8 for v in viol.values())
    assert table.diagnostics["avf_cosine_count"] > 0


def test_k_sweep_consistent_with_plain_run(monkeypatch):
    monkeypatch.setenv("BEAMFORM_THREADS", "1")
    scenario = _toy_scenario()
    table = run_scenario(scenario)
    sweep = run_k_sweep(scenario, [3])
    assert sweep.x_name == "K"
    assert list(sweep.x_values) == [3]
    # K=3 sweep row equals the final snapshot of the plain run for the
    # beamformer whose iteration count is 3 already
    assert sweep.values[0, 0] == table.values[-1, 0]


def test_k_sweep_beyond_early_exit_is_flat(monkeypatch):
    monkeypatch.setenv("BEAMFORM_THREADS", "1")
    scenario = _toy_scenario(
        num_interferers=0,
        noise_power=0.0,
        num_trials=1,
        num_snapshots=5,
        beamformers=(BeamformerSpec("ccm-avf"),),
    )
    sweep = run_k_sweep(scenario, [2, 6])
    assert sweep.values[0, 0] == sweep.values[1, 0]


def test_k_sweep_rejects_bad_values():
    with pytest.raises(ValueError):
        run_k_sweep(_toy_scenario(), [])
    with pytest.raises(ValueError):
        run_k_sweep(_toy_scenario(), [0, 3])


def test_bad_thread_env_is_rejected(monkeypatch):
    monkeypatch.setenv("BEAMFORM_THREADS", "two")
    with pytest.raises(ValueError):
        run_scenario(_toy_scenario())


def test_mismatch_applies_to_presumed_steering_only(monkeypatch):
    monkeypatch.setenv("BEAMFORM_THREADS", "1")
    # with mismatch, the oracle keeps the true steering vector and stays
    # optimal while the adaptive beamformer anchors 2 degrees off
    matched = run_scenario(_toy_scenario(num_trials=2))
    off = run_scenario(_toy_scenario(num_trials=2, mismatch_deg=2.0))
    assert np.array_equal(matched.column("MVDR"), off.column("MVDR"))
    assert off.column("CCM-AVF")[-1] < matched.column("CCM-AVF")[-1]


def test_run_trial_reproducible():
    scenario = _toy_scenario()
    a, diag_a = run_trial(scenario, 1)
    b, diag_b = run_trial(scenario, 1)
    assert np.array_equal(a, b)
    assert diag_a["max_constraint_violation"].tolist() == diag_b["max_constraint_violation"].tolist()


def test_beampattern_table_shape(monkeypatch):
    monkeypatch.setenv("BEAMFORM_THREADS", "1")
    table = beampattern_table(_toy_scenario(num_snapshots=10), grid_points=37)
    assert table.x_name == "doa_deg"
    assert len(table.x_values) == 37
    assert table.values.shape == (37, 3)
    assert "interferer_doas_deg" in table.metadata

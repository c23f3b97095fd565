import numpy as np
import pytest

from beamsim.scenarios import (
    BeamformerSpec,
    Scenario,
    builtin_scenario,
    builtin_scenario_names,
    draw_interferer_doas,
    load_scenario_file,
    parse_scenario_text,
)

CONFIG = """
# comment line
name = toy
num_sensors = 8
spacing_ratio = 0.5
soi_doa_deg = 88.0
num_interferers = 2
noise_power = 0.5
num_snapshots = 25
num_trials = 3
mismatch_deg = 0.5
master_seed = 77
beamformers = ccm-avf, mvdr-oracle
avf_iterations = 2
"""


def test_builtin_scenarios_exist_and_validate():
    for name in builtin_scenario_names():
        s = builtin_scenario(name)
        assert s.name == name
        assert s.geometry.num_sensors == 40
        assert s.num_interferers == 9
        assert s.noise_power == 1.0
    assert builtin_scenario("fig1b").mismatch_deg == 1.0
    kinds = [b.kind for b in builtin_scenario("fig2").beamformers]
    assert kinds == ["ccm-avf", "cmv-avf"]
    with pytest.raises(ValueError):
        builtin_scenario("fig3")


def test_parse_round_trip():
    s = parse_scenario_text(CONFIG)
    assert s.name == "toy"
    assert s.geometry.num_sensors == 8
    assert s.soi_doa_deg == 88.0
    assert s.num_interferers == 2
    assert s.num_snapshots == 25
    assert s.num_trials == 3
    assert s.mismatch_deg == 0.5
    assert s.master_seed == 77
    assert [b.kind for b in s.beamformers] == ["ccm-avf", "mvdr-oracle"]
    assert s.beamformers[0].param("iterations", None) == 2


def test_parse_reports_line_numbers():
    with pytest.raises(ValueError, match="line 2"):
        parse_scenario_text("num_sensors = 8\nnot a key value pair")
    with pytest.raises(ValueError, match="unknown key"):
        parse_scenario_text("wavelength = 3")
    with pytest.raises(ValueError, match="bad value"):
        parse_scenario_text("num_sensors = eight")


def test_fixed_interferer_doas():
    s = parse_scenario_text("interferer_doas_deg = 40.0, 60.0, 150.0\nnum_snapshots = 5")
    assert s.num_interferers == 3
    assert s.interferer_doas_deg == (40.0, 60.0, 150.0)
    with pytest.raises(ValueError):
        parse_scenario_text("interferer_doas_deg = 40.0\nnum_interferers = 2")


def test_scenario_validation():
    with pytest.raises(ValueError):
        Scenario(name="bad", num_snapshots=0)
    with pytest.raises(ValueError):
        Scenario(name="bad", num_trials=0)
    with pytest.raises(ValueError):
        Scenario(name="bad", soi_doa_deg=190.0)
    with pytest.raises(ValueError):
        Scenario(name="bad", soi_doa_deg=179.5, mismatch_deg=1.0)
    with pytest.raises(ValueError):
        Scenario(name="bad", noise_power=-0.1)
    with pytest.raises(ValueError):
        Scenario(name="bad", beamformers=())
    with pytest.raises(ValueError):
        Scenario(name="bad", beamformers=(BeamformerSpec("ccm-avf"), BeamformerSpec("ccm-avf")))
    with pytest.raises(ValueError):
        BeamformerSpec("music")


def test_interferer_draw_respects_guard_and_determinism():
    doas_a = draw_interferer_doas(np.random.default_rng(5), 50, 90.0)
    doas_b = draw_interferer_doas(np.random.default_rng(5), 50, 90.0)
    assert doas_a == doas_b
    assert all(20.0 <= d <= 160.0 for d in doas_a)
    assert all(abs(d - 90.0) >= 4.0 for d in doas_a)
    assert len(set(doas_a)) == 50


def test_canonical_hash_is_stable_and_sensitive():
    s = builtin_scenario("fig1a")
    assert s.sha256() == builtin_scenario("fig1a").sha256()
    from dataclasses import replace

    assert s.sha256() != replace(s, master_seed=1).sha256()
    assert s.sha256() != builtin_scenario("fig1b").sha256()


def test_load_scenario_file(tmp_path):
    path = tmp_path / "toy.cfg"
    path.write_text(CONFIG)
    s = load_scenario_file(path)
    assert s.name == "toy"
    with pytest.raises(ValueError, match="cannot read"):
        load_scenario_file(tmp_path / "missing.cfg")

import dataclasses
import math

import numpy as np
import pytest

from hgalloc.scenario import (SimConfig, db_to_linear, dbm_to_mw,
                              generate_drop, make_stream, noise_power_mw)


def test_default_parameters():
    cfg = SimConfig()
    assert cfg.n_cellular == 30
    assert cfg.n_d2d_pairs == 30
    assert cfg.n_channels == 20
    assert cfg.cell_radius == 500.0
    assert cfg.max_d2d_distance == 20.0
    assert cfg.p_cellular_dbm == 23.0
    assert cfg.p_d2d_dbm == 13.0
    assert cfg.delta_c_db == cfg.delta_d_db == 20.0
    assert cfg.eta_c_db == cfg.eta_d_db == 20.0
    assert cfg.q_cumulative == 2
    assert cfg.carrier_ghz == 2.3
    assert cfg.total_bandwidth_hz == 20e6
    assert cfg.noise_figure_db == 5.0
    assert cfg.n_trials == 200
    assert cfg.master_seed == 12345
    assert cfg.deterministic_coloring is False
    assert cfg.n_vertices == 60


@pytest.mark.parametrize("kwargs", [
    {"n_cellular": -1},
    {"n_d2d_pairs": -2},
    {"n_channels": 0},
    {"q_cumulative": 0},
    {"cell_radius": 0.0},
    {"max_d2d_distance": 0.0},
    {"max_d2d_distance": 600.0},
    {"delta_c_db": math.inf},
    {"eta_d_db": math.nan},
    {"n_trials": 0},
])
def test_config_validation_rejects(kwargs):
    with pytest.raises(ValueError):
        SimConfig(**kwargs)


def test_zero_ue_counts_allowed():
    cfg = SimConfig(n_cellular=0, n_d2d_pairs=0)
    assert cfg.n_vertices == 0


def test_noise_power_default_band_30_channels():
    # 20 MHz over 30 channels, NF 5 dB
    cfg = SimConfig(n_channels=30)
    mw = noise_power_mw(cfg)
    dbm = 10.0 * math.log10(mw)
    assert dbm == pytest.approx(-110.76, abs=0.01)
    assert mw == pytest.approx(8.39e-12, rel=1e-3)


def test_noise_power_exact_megahertz_channel():
    # 1 MHz per channel makes the bandwidth term exactly 60 dB
    cfg = SimConfig(n_channels=20)
    dbm = 10.0 * math.log10(noise_power_mw(cfg))
    assert dbm == pytest.approx(-109.0, abs=1e-9)


def test_noise_power_unit_bandwidth_floor():
    cfg = SimConfig(n_channels=1, total_bandwidth_hz=1.0, noise_figure_db=0.0)
    assert noise_power_mw(cfg) == pytest.approx(10.0 ** -17.4, rel=1e-12)


def test_unit_conversions():
    assert dbm_to_mw(0.0) == 1.0
    assert dbm_to_mw(23.0) == pytest.approx(199.526, rel=1e-5)
    assert db_to_linear(20.0) == pytest.approx(100.0, rel=1e-12)
    assert db_to_linear(-10.0) == pytest.approx(0.1, rel=1e-12)


def test_make_stream_reproducible_and_keyed():
    a = make_stream(12345, 0xD0, 7).random(8)
    b = make_stream(12345, 0xD0, 7).random(8)
    c = make_stream(12345, 0xD0, 8).random(8)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)


def test_make_stream_masks_to_64_bits():
    a = make_stream(2 ** 64 + 5).random(4)
    b = make_stream(5).random(4)
    np.testing.assert_array_equal(a, b)


def test_drop_shapes_and_geometry():
    cfg = SimConfig(n_cellular=40, n_d2d_pairs=25)
    drop = generate_drop(cfg, 0)
    assert drop.enb_position.shape == (2,)
    np.testing.assert_array_equal(drop.enb_position, np.zeros(2))
    assert drop.cellular_positions.shape == (40, 2)
    assert drop.d2d_tx_positions.shape == (25, 2)
    assert drop.d2d_rx_positions.shape == (25, 2)

    r_cell = np.linalg.norm(drop.cellular_positions, axis=1)
    assert np.all(r_cell <= cfg.cell_radius)
    assert np.all(np.linalg.norm(drop.d2d_tx_positions, axis=1) <= cfg.cell_radius)
    assert np.all(np.linalg.norm(drop.d2d_rx_positions, axis=1) <= cfg.cell_radius)
    sep = np.linalg.norm(drop.d2d_tx_positions - drop.d2d_rx_positions, axis=1)
    assert np.all(sep <= cfg.max_d2d_distance)


def test_drop_deterministic_per_trial():
    cfg = SimConfig(n_cellular=10, n_d2d_pairs=10)
    a = generate_drop(cfg, 3)
    b = generate_drop(cfg, 3)
    c = generate_drop(cfg, 4)
    np.testing.assert_array_equal(a.cellular_positions, b.cellular_positions)
    np.testing.assert_array_equal(a.d2d_rx_positions, b.d2d_rx_positions)
    assert not np.array_equal(a.cellular_positions, c.cellular_positions)


def test_drop_empty_network():
    cfg = SimConfig(n_cellular=0, n_d2d_pairs=0)
    drop = generate_drop(cfg, 0)
    assert drop.cellular_positions.shape == (0, 2)
    assert drop.d2d_tx_positions.shape == (0, 2)
    assert drop.d2d_rx_positions.shape == (0, 2)


def test_drop_positions_area_uniform():
    # area-uniform disc: E[r^2] = R^2 / 2
    cfg = SimConfig(n_cellular=10_000, n_d2d_pairs=0)
    drop = generate_drop(cfg, 0)
    r2 = np.sum(drop.cellular_positions ** 2, axis=1)
    assert r2.mean() == pytest.approx(cfg.cell_radius ** 2 / 2.0, rel=0.02)


def test_config_from_dict_defaults_and_overrides():
    cfg = SimConfig.from_dict({})
    assert cfg == SimConfig()
    cfg = SimConfig.from_dict({"n_cellular": 5, "eta_c_db": 14.0})
    assert cfg.n_cellular == 5
    assert cfg.eta_c_db == 14.0
    assert cfg.n_channels == 20


def test_config_from_dict_rejects_unknown_keys():
    with pytest.raises(ValueError, match="unknown config keys"):
        SimConfig.from_dict({"n_cellular": 5, "bandwidth": 1e6})


def test_config_json_round_trip(tmp_path):
    cfg = SimConfig(n_cellular=4, n_d2d_pairs=6, n_channels=3,
                    eta_d_db=17.5, master_seed=99)
    path = tmp_path / "config.json"
    cfg.to_json(path)
    again = SimConfig.from_json(path)
    assert again == cfg
    assert dataclasses.asdict(again) == dataclasses.asdict(cfg)

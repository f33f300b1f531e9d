import math

import numpy as np
import pytest

from hgalloc.evaluator import UNALLOCATED, Allocation
from hgalloc.radio import (LinkGains, compute_gains, path_loss_linear,
                           sample_fading_power, sinr_cellular, sinr_d2d)
from hgalloc.scenario import Drop, SimConfig, make_stream

from conftest import flat_gains


def loss_db(linear):
    return -10.0 * math.log10(linear)


def test_path_loss_nlos_100m():
    g = path_loss_linear(100.0, 2.3, los=False)
    assert loss_db(g) == pytest.approx(105.50, abs=0.05)


def test_path_loss_los_20m():
    g = path_loss_linear(20.0, 2.3, los=True)
    assert loss_db(g) == pytest.approx(63.86, abs=0.05)


def test_path_loss_los_reference_point():
    # 1 m at 1 GHz leaves only the LOS intercept: 28 dB
    g = path_loss_linear(1.0, 1.0, los=True)
    assert g == pytest.approx(10.0 ** -2.8, rel=1e-12)


def test_path_loss_clamps_below_one_meter():
    assert path_loss_linear(0.2, 2.3, los=True) == path_loss_linear(1.0, 2.3, los=True)
    assert path_loss_linear(0.0, 2.3, los=False) == path_loss_linear(1.0, 2.3, los=False)


def test_path_loss_nlos_distance_doubling_ratio():
    ratio = path_loss_linear(64.0, 2.3, los=False) / path_loss_linear(32.0, 2.3, los=False)
    assert ratio == pytest.approx(0.07857, abs=2e-4)


def test_path_loss_vectorized_and_decreasing():
    d = np.array([1.0, 10.0, 100.0, 1000.0])
    g = path_loss_linear(d, 2.3, los=True)
    assert g.shape == (4,)
    assert np.all(np.diff(g) < 0)
    assert np.all(g > 0)


def test_fading_matches_unit_exponential_stream():
    draws = np.array([sample_fading_power(make_stream(11, i)) for i in range(64)])
    replay = np.array([make_stream(11, i).exponential(1.0) for i in range(64)])
    np.testing.assert_array_equal(draws, replay)
    assert np.all(draws >= 0)


def test_fading_moments():
    # sequential scalar draws and one vectorized draw share the bit stream
    s = make_stream(17)
    head = np.array([sample_fading_power(s) for _ in range(256)])
    np.testing.assert_array_equal(head, make_stream(17).exponential(1.0, 256))

    big = make_stream(17).exponential(1.0, 10 ** 6)
    assert big.mean() == pytest.approx(1.0, abs=0.005)
    assert (big > 1.0).mean() == pytest.approx(math.exp(-1.0), abs=0.01)


def _two_pair_drop():
    return Drop(
        enb_position=np.zeros(2),
        cellular_positions=np.array([[200.0, 0.0]]),
        d2d_tx_positions=np.array([[100.0, 0.0], [-50.0, 0.0]]),
        d2d_rx_positions=np.array([[110.0, 0.0], [-50.0, 12.0]]),
    )


def test_compute_gains_path_loss_classes_and_draw_order():
    cfg = SimConfig(n_cellular=1, n_d2d_pairs=2)
    drop = _two_pair_drop()
    gains = compute_gains(drop, cfg, make_stream(99))

    replay = make_stream(99)
    f_cell = replay.exponential(1.0, 1)
    f_pair = replay.exponential(1.0, 2)
    f_tx_enb = replay.exponential(1.0, 2)
    f_cell_rx = replay.exponential(1.0, (1, 2))
    f_tx_rx = replay.exponential(1.0, (2, 2))

    fc = cfg.carrier_ghz
    np.testing.assert_allclose(
        gains.g_cellular_to_enb, path_loss_linear(200.0, fc, los=False) * f_cell)
    # only the in-pair link is line of sight
    np.testing.assert_allclose(
        gains.g_d2d_pair,
        path_loss_linear(np.array([10.0, 12.0]), fc, los=True) * f_pair)
    np.testing.assert_allclose(
        gains.g_d2dtx_to_enb,
        path_loss_linear(np.array([100.0, 50.0]), fc, los=False) * f_tx_enb)
    d_cell_rx = np.array([[90.0, math.hypot(250.0, 12.0)]])
    np.testing.assert_allclose(
        gains.g_cellular_to_d2drx,
        path_loss_linear(d_cell_rx, fc, los=False) * f_cell_rx)
    d_tx_rx = np.array([[10.0, math.hypot(150.0, 12.0)],
                        [160.0, 12.0]])
    np.testing.assert_allclose(
        gains.g_d2dtx_to_d2drx,
        path_loss_linear(d_tx_rx, fc, los=False) * f_tx_rx)


def test_compute_gains_shapes_and_positivity():
    cfg = SimConfig(n_cellular=6, n_d2d_pairs=4)
    drop = Drop(
        enb_position=np.zeros(2),
        cellular_positions=make_stream(1).uniform(-300, 300, (6, 2)),
        d2d_tx_positions=make_stream(2).uniform(-300, 300, (4, 2)),
        d2d_rx_positions=make_stream(3).uniform(-300, 300, (4, 2)),
    )
    gains = compute_gains(drop, cfg, make_stream(4))
    assert gains.n_cellular == 6
    assert gains.n_d2d == 4
    assert gains.g_cellular_to_enb.shape == (6,)
    assert gains.g_d2d_pair.shape == (4,)
    assert gains.g_d2dtx_to_enb.shape == (4,)
    assert gains.g_cellular_to_d2drx.shape == (6, 4)
    assert gains.g_d2dtx_to_d2drx.shape == (4, 4)
    for arr in (gains.g_cellular_to_enb, gains.g_d2d_pair, gains.g_d2dtx_to_enb,
                gains.g_cellular_to_d2drx, gains.g_d2dtx_to_d2drx):
        assert np.all(arr > 0)


def test_compute_gains_empty_classes():
    cfg = SimConfig(n_cellular=0, n_d2d_pairs=2)
    drop = Drop(enb_position=np.zeros(2),
                cellular_positions=np.zeros((0, 2)),
                d2d_tx_positions=np.array([[10.0, 0.0], [0.0, 10.0]]),
                d2d_rx_positions=np.array([[15.0, 0.0], [0.0, 15.0]]))
    gains = compute_gains(drop, cfg, make_stream(5))
    assert gains.g_cellular_to_enb.shape == (0,)
    assert gains.g_cellular_to_d2drx.shape == (0, 2)
    assert gains.g_d2dtx_to_d2drx.shape == (2, 2)


def _noise_1e14_config(n_channels=1, **kwargs):
    # per-channel thermal noise of exactly 1e-14 mW (-140 dBm)
    return SimConfig(total_bandwidth_hz=1000.0 * n_channels,
                     n_channels=n_channels, noise_figure_db=4.0, **kwargs)


def test_sinr_cellular_single_interferer():
    cfg = _noise_1e14_config(n_cellular=1, n_d2d_pairs=1)
    p_c = 10.0 ** 2.3
    p_d = 10.0 ** 1.3
    gains = flat_gains(1, 1)
    gains.g_cellular_to_enb[0] = 1e-10 / p_c
    gains.g_d2dtx_to_enb[0] = 1e-11 / p_d
    alloc = Allocation(assignment=np.array([0, 0]), n_cellular=1, n_d2d=1,
                       n_channels=1)
    got = sinr_cellular(0, 0, alloc, gains, cfg)
    assert got == pytest.approx(1e-10 / (1e-14 + 1e-11), rel=1e-9)
    assert got == pytest.approx(9.99, abs=0.005)


def test_sinr_d2d_mixed_interferers():
    cfg = _noise_1e14_config(n_cellular=1, n_d2d_pairs=2)
    p_c = 10.0 ** 2.3
    p_d = 10.0 ** 1.3
    gains = flat_gains(1, 2, cross=0.0)
    gains.g_d2d_pair[0] = 1e-9 / p_d
    gains.g_cellular_to_d2drx[0, 0] = 1e-11 / p_c
    gains.g_d2dtx_to_d2drx[1, 0] = 1e-11 / p_d
    alloc = Allocation(assignment=np.array([0, 0, 0]), n_cellular=1, n_d2d=2,
                       n_channels=1)
    got = sinr_d2d(0, 0, alloc, gains, cfg)
    assert got == pytest.approx(1e-9 / (1e-14 + 2e-11), rel=1e-9)
    assert got == pytest.approx(49.975, rel=1e-3)


def test_sinr_excludes_other_channels_and_self():
    cfg = _noise_1e14_config(n_cellular=1, n_d2d_pairs=2, n_channels=2)
    gains = flat_gains(1, 2, cross=0.5)
    gains.g_d2dtx_to_d2drx[0, 0] = math.nan  # diagonal must never be read
    alone = Allocation(assignment=np.array([0, 0, 1]), n_cellular=1, n_d2d=2,
                       n_channels=2)
    shared = Allocation(assignment=np.array([0, 0, 0]), n_cellular=1, n_d2d=2,
                        n_channels=2)
    gamma_alone = sinr_d2d(0, 0, alone, gains, cfg)
    gamma_shared = sinr_d2d(0, 0, shared, gains, cfg)
    assert math.isfinite(gamma_alone)
    assert gamma_shared < gamma_alone


def test_sinr_requires_vertex_on_channel():
    cfg = _noise_1e14_config(n_cellular=1, n_d2d_pairs=1, n_channels=2)
    gains = flat_gains(1, 1)
    alloc = Allocation(assignment=np.array([0, UNALLOCATED]), n_cellular=1,
                       n_d2d=1, n_channels=2)
    with pytest.raises(ValueError, match="not on channel"):
        sinr_cellular(0, 1, alloc, gains, cfg)
    with pytest.raises(ValueError, match="not on channel"):
        sinr_d2d(0, 0, alloc, gains, cfg)


def test_link_gains_counts():
    g = LinkGains(
        g_cellular_to_enb=np.ones(3),
        g_d2d_pair=np.ones(2),
        g_d2dtx_to_enb=np.ones(2),
        g_cellular_to_d2drx=np.ones((3, 2)),
        g_d2dtx_to_d2drx=np.ones((2, 2)),
    )
    assert g.n_cellular == 3
    assert g.n_d2d == 2

import numpy as np
import pytest

from exceptions import InvalidArgumentError
from models import ChannelMode, NetworkConfig
from simulation.channel import (
    link_capacity,
    logdet_capacity,
    sample_channel,
    sample_channels,
    subset_capacities,
    uniforms_per_trial,
    uplink_gram,
)


@pytest.fixture
def cfg():
    return NetworkConfig(K=2, M=3, mode=ChannelMode.NONRECIPROCAL)


def test_draws_are_deterministic(cfg):
    a = sample_channel(cfg, 17, 42)
    b = sample_channel(cfg, 17, 42)
    np.testing.assert_array_equal(a.uplink, b.uplink)
    np.testing.assert_array_equal(a.downlink, b.downlink)
    c = sample_channel(cfg, 17, 43)
    assert not np.allclose(a.uplink, c.uplink)


def test_batch_rows_equal_single_draws(cfg):
    uplink, downlink = sample_channels(cfg, 100, 50, 7)
    for offset in (0, 13, 49):
        single = sample_channel(cfg, 100 + offset, 7)
        np.testing.assert_array_equal(uplink[offset], single.uplink)
        np.testing.assert_array_equal(downlink[offset], single.downlink)


def test_draws_do_not_depend_on_block_split(cfg):
    whole, _ = sample_channels(cfg, 0, 1000, 5)
    first, _ = sample_channels(cfg, 0, 400, 5)
    second, _ = sample_channels(cfg, 400, 600, 5)
    np.testing.assert_array_equal(whole, np.concatenate([first, second]))


def test_reciprocal_mode_shares_channels():
    cfg = NetworkConfig(K=2, M=2, mode=ChannelMode.RECIPROCAL)
    draw = sample_channel(cfg, 3, 11)
    np.testing.assert_array_equal(draw.uplink, draw.downlink)


def test_nonreciprocal_mode_draws_independent_downlink(cfg):
    draw = sample_channel(cfg, 3, 11)
    assert draw.uplink.shape == (4, 3)
    assert not np.allclose(draw.uplink, draw.downlink)
    assert uniforms_per_trial(cfg) == 8 * cfg.K * cfg.M


def test_entries_have_unit_power():
    cfg = NetworkConfig(K=1, M=1, mode=ChannelMode.NONRECIPROCAL)
    uplink, _ = sample_channels(cfg, 0, 200_000, 2024)
    power = np.mean(np.abs(uplink) ** 2)
    assert 0.99 <= power <= 1.01
    assert abs(np.mean(uplink)) < 0.02


def test_logdet_capacity_examples():
    assert logdet_capacity(np.eye(2), 1.0) == pytest.approx(2.0)
    assert logdet_capacity(np.array([[1.0 + 0.0j]]), 3.0) == pytest.approx(2.0)
    assert logdet_capacity(np.zeros((2, 2)), 10.0) == 0.0
    assert logdet_capacity(np.eye(3), 0.0) == 0.0


@pytest.mark.parametrize("H,rho", [(np.eye(2), -1.0), (np.eye(2), np.inf), (np.array([[np.nan]]), 1.0)])
def test_logdet_capacity_rejects_bad_input(H, rho):
    with pytest.raises(InvalidArgumentError):
        logdet_capacity(H, rho)


def test_subset_capacity_matches_logdet(cfg):
    uplink, _ = sample_channels(cfg, 0, 8, 99)
    gram = uplink_gram(uplink)
    subset = (0, 2, 3)
    batched = subset_capacities(gram, subset, 10.0)
    for t in range(8):
        H = uplink[t, list(subset), :].T
        assert batched[t] == pytest.approx(logdet_capacity(H, 10.0), rel=1e-10)


def test_link_capacity():
    vectors = np.array([[1.0, 1.0j], [0.0, 0.0]])
    np.testing.assert_allclose(link_capacity(vectors, 1.5), [2.0, 0.0])


def test_negative_seed_rejected(cfg):
    with pytest.raises(InvalidArgumentError):
        sample_channels(cfg, 0, 1, -1)

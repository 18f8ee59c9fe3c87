import pytest

from constants import Constants
from exceptions import InvalidArgumentError, SimulationRefusedError
from models import ChannelMode, NetworkConfig, RunConfig
from workflows import SimulationWorkflow


def _request(**overrides):
    fields = dict(
        command="simulate",
        network=NetworkConfig(K=1, M=1, mode=ChannelMode.RECIPROCAL),
        snr_grid_db=(10.0, 15.0, 20.0),
        trials=2000,
        seed=3,
        event=Constants.EVENT_STATIC_PHASES,
        r_value=0.1,
        split=0.5,
        scheme=Constants.SCHEME_MAC_BC,
    )
    fields.update(overrides)
    return RunConfig(**fields)


def test_static_phases_macbc_is_marked_partial():
    result = SimulationWorkflow().process(_request())
    assert result.partial
    assert result.event == Constants.EVENT_STATIC_PHASES
    assert result.analytic_d is not None
    assert len(result.points) == 3


def test_mactdma_reference_is_complete():
    result = SimulationWorkflow().process(_request(scheme=Constants.SCHEME_MAC_TDMA))
    assert not result.partial


def test_unknown_event_rejected():
    with pytest.raises(InvalidArgumentError):
        SimulationWorkflow().process(_request(event="relay-only"))


def test_subset_cap_applies_before_sampling():
    network = NetworkConfig(K=4, M=2, mode=ChannelMode.NONRECIPROCAL)
    with pytest.raises(SimulationRefusedError):
        SimulationWorkflow().process(_request(event=Constants.EVENT_DDF, network=network))


def test_cutset_has_no_subset_cap():
    network = NetworkConfig(K=5, M=1, mode=ChannelMode.RECIPROCAL)
    result = SimulationWorkflow().process(_request(event=Constants.EVENT_CUTSET_RECIPROCAL, network=network))
    assert result.analytic_d == pytest.approx(0.8)

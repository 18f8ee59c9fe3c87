import numpy as np
import pytest

from analysis.ddf import (
    alpha_profile_for,
    brute_force_inner_ddf,
    constraint_value,
    converse_outage_opt,
    ddf_dmt,
    ddf_point,
    dynamic_listening_fraction,
    inner_ddf_opt,
    solve_inner_ddf,
    upper_bound_nonreciprocal,
)
from analysis.dmt_curves import ppc_dmt
from exceptions import InvalidArgumentError
from models import ChannelMode, NetworkConfig
from utils.grid_utils import r_grid


def _cfg(K, M):
    return NetworkConfig(K=K, M=M, mode=ChannelMode.NONRECIPROCAL)


def test_ddf_meets_converse_k3_m6():
    cfg = _cfg(3, 6)
    for r in r_grid(0.0, 0.25, 0.005):
        expected = 6.0 * max((1.0 - 4.0 * r) / (1.0 - r), 0.0)
        assert ddf_dmt(float(r), cfg) == pytest.approx(expected, abs=1e-3)


def test_ddf_single_pair_single_antenna(nonreciprocal_k1_m1):
    point = ddf_point(0.1, nonreciprocal_k1_m1)
    assert point.diversity == pytest.approx(0.875, abs=1e-6)
    assert point.argmin_L == 2
    assert point.per_subset_size[1] == pytest.approx(8.0 / 9.0, abs=1e-6)
    assert upper_bound_nonreciprocal(0.1, nonreciprocal_k1_m1) == pytest.approx(8.0 / 9.0)


def test_ddf_below_converse_and_nonincreasing():
    for K, M in [(1, 2), (2, 3), (3, 4)]:
        cfg = _cfg(K, M)
        rs = r_grid(0.0, 1.0 / (K + 1), 0.01)
        values = np.array([ddf_dmt(float(r), cfg) for r in rs])
        upper = np.array([upper_bound_nonreciprocal(float(r), cfg) for r in rs])
        assert np.all(values <= upper + 1e-6)
        assert np.all(np.diff(values) <= 1e-6)
        assert values[0] == pytest.approx(M)


def test_inner_problem_feasible_corner_has_zero_cost():
    # s1 = min(L, M), s2 = 1 is itself in outage once r is large
    point = solve_inner_ddf(1, 1, 1, 0.6)
    assert point.cost == 0.0
    assert point.s2 == 1.0


def test_inner_problem_minimiser_lies_on_constraint():
    point = solve_inner_ddf(2, 3, 4, 0.1)
    assert float(constraint_value(point.s1, point.s2, 3, 2)) == pytest.approx(0.1, abs=1e-6)
    expected = ppc_dmt(2, 4).evaluate(point.s1) + 4 * (1.0 - point.s2)
    assert point.cost == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("L,M", [(1, 1), (1, 3), (2, 2), (2, 3), (3, 1), (3, 3)])
@pytest.mark.parametrize("K", [2, 3])
def test_inner_problem_matches_alpha_grid_oracle(L, M, K):
    for r in np.arange(0.02, 0.31, 0.04):
        value = inner_ddf_opt(L, K, M, float(r))
        oracle, bound = brute_force_inner_ddf(L, K, M, float(r), step=0.02)
        assert value - 1e-6 <= oracle <= value + bound + 1e-6


@pytest.mark.slow
@pytest.mark.parametrize("L", [1, 2, 3])
@pytest.mark.parametrize("M", [1, 2, 3])
@pytest.mark.parametrize("K", [1, 2, 3])
def test_inner_problem_matches_oracle_full_grid(L, M, K):
    if L > 2 * K:
        pytest.skip("subset larger than the user set")
    for r in np.arange(0.02, 0.301, 0.02):
        value = inner_ddf_opt(L, K, M, float(r))
        oracle, bound = brute_force_inner_ddf(L, K, M, float(r))
        assert value - 1e-6 <= oracle <= value + bound + 1e-6


def test_oracle_four_dimensional_coarse_grid():
    value = inner_ddf_opt(4, 2, 4, 0.1)
    oracle, bound = brute_force_inner_ddf(4, 2, 4, 0.1, step=0.05)
    assert value - 1e-6 <= oracle <= value + bound + 1e-6


@pytest.mark.parametrize("K", [1, 2, 3])
@pytest.mark.parametrize("M", [1, 2, 3, 4, 5, 6])
def test_converse_matches_closed_form(K, M):
    cfg = _cfg(K, M)
    for r in np.arange(0.0, 0.51, 0.01):
        expected = M * max((1.0 - (K + 1) * r) / (1.0 - r), 0.0)
        assert converse_outage_opt(float(r), cfg) == pytest.approx(expected, abs=1e-3)


def test_alpha_profile_cost_equals_reduced_objective():
    for L, K, M, r in [(1, 1, 1, 0.1), (2, 3, 4, 0.1), (3, 2, 2, 0.15), (4, 3, 6, 0.05)]:
        point = solve_inner_ddf(L, K, M, r)
        profile = alpha_profile_for(point, L, M)
        assert profile.cost() == pytest.approx(point.cost, abs=1e-9)
        assert profile.s1() == pytest.approx(point.s1, abs=1e-9)
        assert profile.s2() == pytest.approx(point.s2, abs=1e-9)


def test_listening_fraction():
    decision = dynamic_listening_fraction([(1, 4.0), (2, 6.0)], 2.0)
    assert decision.fraction == pytest.approx(2.0 / 3.0)
    assert not decision.outage
    assert dynamic_listening_fraction([(1, 1.0)], 2.0).outage
    assert dynamic_listening_fraction([(1, 0.0)], 0.0).fraction == 0.0
    assert dynamic_listening_fraction([(1, 0.0)], 1.0).fraction == np.inf


@pytest.mark.parametrize("L", [0, 3])
def test_subset_size_out_of_range(L):
    with pytest.raises(InvalidArgumentError):
        solve_inner_ddf(L, 1, 2, 0.1)


def test_upper_bound_rejects_full_rate(nonreciprocal_k1_m1):
    with pytest.raises(InvalidArgumentError):
        upper_bound_nonreciprocal(1.0, nonreciprocal_k1_m1)


@pytest.mark.parametrize("K", [1, 2, 3])
def test_ddf_nondecreasing_in_relay_antennas(K):
    for r in (0.0, 0.05, 0.1, 0.15, 0.2):
        values = [ddf_dmt(r, _cfg(K, M)) for M in range(1, 7)]
        assert np.all(np.diff(values) >= -1e-6)

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stefanss import PhysicalState, SimilarityState, StateError, profile_value, to_physical, to_similarity


def ramp_physical(t, s, n=400):
    x = np.linspace(0.0, s, n + 1)
    x[-1] = s
    return PhysicalState(t, s, x, 0.5 * (1.0 - x / s))


def test_initial_time_maps_to_tau_zero():
    ss = to_similarity(ramp_physical(0.0, 1.0))
    assert ss.tau == 0.0 and ss.b == 1.0


def test_tau_one():
    ss = to_similarity(ramp_physical(math.e - 1.0, 1.0))
    assert ss.tau == pytest.approx(1.0, abs=1e-15)


def test_to_physical_at_tau_zero():
    ss = SimilarityState(0.0, 0.8, np.linspace(1.0, 0.0, 9))
    ps = to_physical(ss)
    assert ps.t == 0.0 and ps.s == 0.8


def test_stationary_front_doubles_at_tau_ln4(profile):
    ss = SimilarityState.from_function(lambda e: profile_value(profile, e), profile.omega, 100, tau=math.log(4.0))
    ps = to_physical(ss)
    assert ps.t == pytest.approx(3.0, rel=1e-15)
    assert ps.s == pytest.approx(2.0 * profile.omega, rel=1e-15)


def test_flux_scaling(profile):
    # -u_x(0, t) = h / sqrt(t+1)  <->  -W_eta(0) = h
    n = 4000
    for tau in (0.0, 1.0, 3.0):
        ss = SimilarityState.from_function(lambda e: profile_value(profile, e), profile.omega, n, tau=tau)
        ps = to_physical(ss)
        ux0 = (-3 * ps.u[0] + 4 * ps.u[1] - ps.u[2]) / (2 * (ps.x[1] - ps.x[0]))
        assert -ux0 == pytest.approx(profile.h / math.sqrt(ps.t + 1.0), rel=1e-6)


def test_round_trip_ramp_at_initial_time():
    ps = ramp_physical(0.0, 1.0)
    back = to_physical(to_similarity(ps))
    assert back.t == ps.t and back.s == ps.s
    np.testing.assert_allclose(back.u, ps.u, atol=1e-8)


def test_round_trip_nonuniform_samples_second_order():
    # piecewise-linear resampling of a smooth profile converges at O(dx^2)
    def err(n):
        t, s = 2.0, 1.7
        x = s * np.sin(np.linspace(0.0, np.pi / 2, n + 1))
        x[-1] = s
        u = np.cos(0.5 * np.pi * x / s)
        ps = PhysicalState(t, s, x, np.maximum(u, 0.0) * (x < s))
        back = to_physical(to_similarity(ps))
        return np.max(np.abs(back.u - np.cos(0.5 * np.pi * back.x / s) * (back.x < s)))

    e1, e2 = err(100), err(200)
    assert 3.0 < e1 / e2 < 5.0


@settings(max_examples=300, deadline=None)
@given(st.floats(min_value=0.0, max_value=1e4), st.floats(min_value=1e-3, max_value=1e3))
def test_round_trip_time_and_front_to_rounding(t, s):
    # t = expm1(log1p(t)) amplifies the rounding of tau by (t+1)
    back = to_physical(to_similarity(ramp_physical(t, s, n=8)))
    eps = np.finfo(float).eps
    tau = math.log1p(t)
    assert abs(back.t - t) <= 2 * eps * (t + 1.0) * (tau + 1.0)
    assert abs(back.s - s) <= 2 * eps * s * (tau + 2.0)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=0.0, max_value=50.0), st.floats(min_value=0.0, max_value=50.0))
def test_time_map_monotone(t1, t2):
    a, b = to_similarity(ramp_physical(t1, 1.0, 8)), to_similarity(ramp_physical(t2, 1.0, 8))
    if t1 < t2:
        assert a.tau < b.tau
    assert a.b > 0 and b.b > 0


def test_physical_state_invariants():
    with pytest.raises(StateError):
        PhysicalState(-1.0, 1.0, [0.0, 1.0], [1.0, 0.0])
    with pytest.raises(StateError):
        PhysicalState(0.0, 1.0, [0.0, 0.9], [1.0, 0.0])
    with pytest.raises(StateError):
        PhysicalState(0.0, 1.0, [0.0, 1.0], [1.0, 0.5])
    with pytest.raises(StateError):
        PhysicalState(0.0, 1.0, [0.0, 0.5, 1.0], [1.0, -0.5, 0.0])

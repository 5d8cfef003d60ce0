import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stefanss import (
    ConvergenceError,
    DomainError,
    SelfSimilarProfile,
    physical_self_similar,
    profile_slope,
    profile_value,
    solve_omega,
)
from stefanss.similarity import erf_difference, gaussian_front_residual, invert_gaussian_front

# mpmath (40 digits): roots of (x/2) exp(x^2/4) = h and quadratures of h exp(-s^2/4)
OMEGA_ORACLE = {
    0.1: 0.1980484250753114537,
    0.5: 0.83872964803826486175,
    1.0: 1.3058372808384094311,
    2.0: 1.7921004415602254943,
    10.0: 2.8034775792949075432,
}
U0_ORACLE = 0.59229653646932651505  # h * int_0^1 exp(-s^2/4) ds, h = H_REF


def test_forward_oracle_value(h_ref):
    assert 0.5 * math.exp(0.25) == pytest.approx(h_ref, abs=1e-16)


def test_solve_omega_inverts_forward_value(h_ref):
    assert solve_omega(h_ref) == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("h, omega", sorted(OMEGA_ORACLE.items()))
def test_solve_omega_matches_high_precision_root(h, omega):
    assert solve_omega(h) == pytest.approx(omega, rel=1e-14)


def test_small_h_asymptotics():
    h = 1e-8
    assert abs(solve_omega(h) / (2.0 * h) - 1.0) < 1e-15


def test_monotone_examples():
    assert solve_omega(0.5) < solve_omega(1.0)


@pytest.mark.parametrize("h", [0.0, -1.0, float("nan"), float("inf")])
def test_solve_omega_rejects_bad_h(h):
    with pytest.raises(DomainError):
        solve_omega(h)


def test_bracket_failure_is_reported():
    with pytest.raises(ConvergenceError):
        invert_gaussian_front(1e300, 1.0, max_doublings=0)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1e-12, max_value=1e12))
def test_residual_closure(h):
    w = solve_omega(h)
    assert abs(gaussian_front_residual(w, h)) <= 1e-12 * max(1.0, h)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1e-6, max_value=1e6), st.floats(min_value=1.0001, max_value=2.0))
def test_solve_omega_strictly_increasing(h, factor):
    assert solve_omega(h) < solve_omega(h * factor)


def test_erf_accuracy_on_0_10():
    x = np.linspace(0.0, 10.0, 401)
    got = erf_difference(x, 0.0)
    ref = np.array([float(mpmath.erf(mpmath.mpf(float(v)))) for v in x])
    assert np.max(np.abs(got - ref)) <= 1e-12


def test_erf_difference_tail_branch():
    a, b = 6.0, 5.5
    ref = float(mpmath.erf(a) - mpmath.erf(b))
    assert erf_difference(a, b) == pytest.approx(ref, rel=1e-12)


def test_profile_value_quadrature_oracle(profile):
    assert profile_value(profile, 0.0) == pytest.approx(U0_ORACLE, abs=1e-14)


def test_profile_value_dense_quadrature(profile):
    for eta in np.linspace(0.0, profile.omega, 11):
        ref = float(mpmath.quad(lambda s: profile.h * mpmath.exp(-s * s / 4), [eta, profile.omega]))
        assert profile_value(profile, eta) == pytest.approx(ref, abs=1e-14)


def test_profile_value_at_front_is_zero(profile):
    assert profile_value(profile, profile.omega) == 0.0


def test_profile_derivative_at_origin(profile):
    eps = 1e-6
    fd = (profile_value(profile, eps) - profile_value(profile, 0.0)) / eps
    assert fd == pytest.approx(-profile.h, abs=1e-6)


def test_profile_positive_and_decreasing(profile):
    eta = np.linspace(0.0, profile.omega, 5001)
    u = profile_value(profile, eta)
    assert np.all(u >= 0.0)
    assert np.all(np.diff(u[:-1]) < 0.0)


@pytest.mark.parametrize("eta", [-1e-9, 1.0 + 1e-9, float("nan")])
def test_profile_domain(profile, eta):
    with pytest.raises(DomainError):
        profile_value(profile, eta)
    with pytest.raises(DomainError):
        profile_slope(profile, eta)


def test_profile_slopes(profile):
    assert profile_slope(profile, 0.0) == -profile.h
    assert profile_slope(profile, profile.omega) == pytest.approx(-profile.omega / 2, abs=1e-14)
    s = np.abs(profile_slope(profile, np.linspace(0.0, profile.omega, 100)))
    assert np.all(np.diff(s) < 0.0)


@pytest.mark.parametrize("h", [0.1, 2.0, 10.0])
def test_front_law_holds_for_any_h(h):
    p = SelfSimilarProfile.from_h(h)
    assert profile_slope(p, p.omega) == pytest.approx(-p.omega / 2, rel=1e-13)


def test_stationary_ode_residual_second_order(profile):
    def residual(n):
        eta = np.linspace(0.0, profile.omega, n + 1)
        d = eta[1]
        u = profile_value(profile, eta)
        r = (u[2:] - 2 * u[1:-1] + u[:-2]) / d**2 + 0.5 * eta[1:-1] * (u[2:] - u[:-2]) / (2 * d)
        return np.max(np.abs(r)), d

    r1, d1 = residual(100)
    r2, d2 = residual(200)
    c = r1 / d1**2
    assert 3.5 < r1 / r2 < 4.5
    for n in (400, 800):
        r, d = residual(n)
        assert r <= 1.2 * c * d**2


def test_physical_self_similar(profile):
    assert physical_self_similar(profile, profile.omega, 0.0) == (0.0, profile.omega)
    _, front = physical_self_similar(profile, 0.3, 3.0)
    assert front == 2.0 * profile.omega
    for t in (0.0, 1.0, 99.0):
        assert physical_self_similar(profile, 0.0, t)[0] == profile_value(profile, 0.0)
    assert physical_self_similar(profile, 5.0, 0.0)[0] == 0.0
    with pytest.raises(DomainError):
        physical_self_similar(profile, -1.0, 0.0)


def test_profile_invariants_enforced():
    with pytest.raises(DomainError):
        SelfSimilarProfile(-1.0, 1.0)
    with pytest.raises(DomainError):
        SelfSimilarProfile(1.0, 0.0)

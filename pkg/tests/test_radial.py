import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rotstar import (
    InvalidParams,
    NoFiniteRadius,
    PolytropeParams,
    mass_exponent,
    mass_of,
    rescale,
    solve_lane_emden,
)
from rotstar.radial import RadialProfile, central_value_for_mass

SQRT_PI = math.sqrt(math.pi)


def closed_form_gamma2(x, a=1.0):
    k = 2.0 * SQRT_PI
    return a * np.sinc(k * np.asarray(x) / math.pi)


@pytest.mark.parametrize("a", [0.3, 1.0, 4.0])
def test_gamma2_radius_independent_of_a(a):
    prof = solve_lane_emden(PolytropeParams(2.0, a))
    assert prof.R == pytest.approx(SQRT_PI / 2, abs=1e-9)
    assert prof.M == pytest.approx(SQRT_PI / 2 * a, rel=1e-9)


def test_gamma2_spot_value(le_gamma2):
    r = 0.4
    exact = math.sin(2 * SQRT_PI * r) / (2 * SQRT_PI * r)
    assert le_gamma2.enthalpy(r) == pytest.approx(exact, abs=1e-6)


def test_gamma2_profile(le_gamma2):
    exact = closed_form_gamma2(le_gamma2.xi)
    inner = le_gamma2.xi < 0.99 * le_gamma2.R
    rel = np.abs(le_gamma2.u[inner] - exact[inner]) / exact[inner]
    assert rel.max() < 1e-8


def test_gamma_7_6_has_no_radius():
    with pytest.raises(NoFiniteRadius):
        solve_lane_emden(PolytropeParams(7.0 / 6.0, 1.0), xi_max=50.0)


def test_invalid_params():
    with pytest.raises(InvalidParams):
        PolytropeParams(1.0)
    with pytest.raises(InvalidParams):
        PolytropeParams(1.5, -1.0)


def test_step_size_independence():
    coarse = solve_lane_emden(PolytropeParams(1.5, 1.0), step=1e-2)
    fine = solve_lane_emden(PolytropeParams(1.5, 1.0), step=1e-3)
    assert coarse.R == pytest.approx(fine.R, abs=1e-9)
    assert coarse.M == pytest.approx(fine.M, rel=1e-5)


def test_mass_of_zero_profile(le_gamma2):
    zero = RadialProfile(2.0, 1.0, le_gamma2.xi, np.zeros_like(le_gamma2.u), le_gamma2.du, le_gamma2.R)
    assert mass_of(zero) == 0.0


@pytest.mark.parametrize("gamma, expected", [(4 / 3, 0.0), (2.0, 1.0), (1.5, 0.5)])
def test_mass_exponent(gamma, expected):
    assert mass_exponent(gamma) == pytest.approx(expected, abs=1e-15)


def test_rescale_identity(le_gamma15):
    same = rescale(le_gamma15, 1.0)
    np.testing.assert_array_equal(same.u, le_gamma15.u)
    assert same.R == le_gamma15.R
    assert same.M == pytest.approx(le_gamma15.M, rel=1e-14)


@settings(max_examples=6, deadline=None)
@given(lam=st.floats(0.5, 2.0))
def test_rescale_matches_direct_solve(le_gamma15, lam):
    scaled = rescale(le_gamma15, lam)
    direct = solve_lane_emden(PolytropeParams(1.5, scaled.a))
    assert scaled.R == pytest.approx(direct.R, rel=1e-8)
    assert scaled.M == pytest.approx(direct.M, rel=1e-5)


def test_rescale_rejects_gamma2(le_gamma2):
    with pytest.raises(InvalidParams):
        rescale(le_gamma2, 2.0)


def test_central_value_for_mass_roundtrip():
    a = central_value_for_mass(1.5, 3.0)
    assert solve_lane_emden(PolytropeParams(1.5, a)).M == pytest.approx(3.0, rel=1e-6)
    with pytest.raises(InvalidParams):
        central_value_for_mass(4 / 3, 1.0)


def test_density_vanishes_outside(le_gamma15):
    assert le_gamma15.density(le_gamma15.R * 1.01) == 0.0
    assert le_gamma15.density(0.0) == pytest.approx(1.0, rel=1e-12)

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from rotstar import InvalidParams, RotationProfile, j_infinity, j_of
from rotstar.rotation import decay_exponent, effective_radius


def test_zero_rotation():
    prof = RotationProfile("power_decay", 0.0)
    np.testing.assert_array_equal(j_of(prof, np.linspace(0, 10, 11)), 0.0)
    assert j_infinity(prof) == 0.0


def test_power_decay_closed_form():
    prof = RotationProfile("power_decay", 1.0, 2.0)
    assert j_infinity(prof) == 0.5
    r = np.array([0.3, 1.0, 7.0])
    np.testing.assert_allclose(j_of(prof, r), 0.5 * (1 - 1 / (1 + r**2)), rtol=1e-14)


def test_gaussian_limit():
    prof = RotationProfile("gaussian", 1.0)
    assert j_infinity(prof) == 0.5
    # independent quadrature of s exp(-s^2)
    val, _ = quad(lambda s: s * math.exp(-s * s), 0, math.inf)
    assert j_infinity(prof) == pytest.approx(val, abs=1e-12)
    assert decay_exponent(prof) == math.inf


def test_tabulated_copy_of_power_decay():
    exact = RotationProfile("power_decay", 1.0, 2.0)
    s = np.linspace(0.0, 50.0, 5001)
    tab = RotationProfile.from_table(s, exact.omega2(s))
    r = np.linspace(0.0, 50.0, 101)
    np.testing.assert_allclose(j_of(tab, r), j_of(exact, r), atol=1e-8)
    assert j_infinity(tab) == pytest.approx(0.5, abs=1e-6)
    assert decay_exponent(tab) == pytest.approx(2.0, abs=1e-2)


def test_tabulated_from_file(tmp_path):
    s = np.linspace(0.0, 20.0, 401)
    path = tmp_path / "w.txt"
    np.savetxt(path, np.column_stack([s, (1 + s**2) ** -3.0]), header="s omega2")
    tab = RotationProfile.from_file(path)
    assert j_infinity(tab) == pytest.approx(0.25, abs=1e-6)


def test_nonintegrable_tail_rejected():
    s = np.linspace(0.0, 10.0, 50)
    tab = RotationProfile.from_table(s, 1.0 / (1.0 + s))
    with pytest.raises(InvalidParams):
        j_infinity(tab)


def test_invalid_profiles():
    with pytest.raises(InvalidParams):
        RotationProfile("power_decay", 1.0, 1.0)
    with pytest.raises(InvalidParams):
        RotationProfile("solid_body")
    with pytest.raises(InvalidParams):
        RotationProfile.from_table([0.0, 1.0, 2.0, 3.0], [1.0, -1.0, 0.5, 0.1])


@settings(max_examples=25, deadline=None)
@given(p=st.floats(1.1, 5.0), w=st.floats(0.1, 3.0))
def test_j_monotone_and_bounded(p, w):
    prof = RotationProfile("power_decay", w, p)
    r = np.linspace(0.0, 100.0, 400)
    j = j_of(prof, r)
    assert np.all(np.diff(j) >= 0)
    assert j[-1] <= j_infinity(prof) * (1 + 1e-12)


@pytest.mark.parametrize("kind", ["power_decay", "gaussian"])
def test_effective_radius(kind):
    prof = RotationProfile(kind, 1.0, 2.0)
    R = effective_radius(prof, 1e-6)
    assert j_infinity(prof) - j_of(prof, R) == pytest.approx(1e-6, rel=1e-6)

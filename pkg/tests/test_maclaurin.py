import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rotstar import InvalidParams, boundary_residual, ellipsoid_coeffs, maclaurin_family, maclaurin_omega2
from rotstar.maclaurin import omega2_from_coeffs, omega2_reduced, semi_axes, spheroid

# Independent oracle: s = tan^2(theta) mapping, composite Simpson on 1e6 panels.
ORACLE_2_1_HALF = (5.559987644661656, 0.7059186437623443, 1.7893285383439579, 3.7879381250732846)
ORACLE_OMEGA2_E2 = 1.3144397031724893

axis = st.floats(0.2, 5.0)


def test_sphere():
    L = ellipsoid_coeffs(1.0, 1.0, 1.0)
    assert L.L0 == pytest.approx(2 * math.pi, abs=1e-12)
    for v in (L.L1, L.L2, L.L3):
        assert v == pytest.approx(2 * math.pi / 3, abs=1e-12)


def test_triaxial_oracle():
    L = ellipsoid_coeffs(2.0, 1.0, 0.5)
    np.testing.assert_allclose((L.L0, L.L1, L.L2, L.L3), ORACLE_2_1_HALF, rtol=0, atol=1e-8)


@settings(max_examples=30, deadline=None)
@given(a=axis, b=axis, c=axis)
def test_trace_identity(a, b, c):
    L = ellipsoid_coeffs(a, b, c)
    assert min(L.L0, L.L1, L.L2, L.L3) >= 0
    assert L.L1 + L.L2 + L.L3 == pytest.approx(2 * math.pi, abs=1e-7)


@settings(max_examples=15, deadline=None)
@given(a=axis, b=axis, c=axis)
def test_swap_symmetry(a, b, c):
    L = ellipsoid_coeffs(a, b, c)
    M = ellipsoid_coeffs(b, a, c)
    assert M.L1 == pytest.approx(L.L2, abs=1e-10)
    assert M.L2 == pytest.approx(L.L1, abs=1e-10)
    assert M.L0 == pytest.approx(L.L0, abs=1e-10)


def test_omega2_values():
    assert maclaurin_omega2(1.0) == pytest.approx(0.0, abs=1e-10)
    assert maclaurin_omega2(2.0) == pytest.approx(ORACLE_OMEGA2_E2, abs=1e-8)
    assert 0 < maclaurin_omega2(1e4) < 1e-3


@pytest.mark.parametrize("e", [1.5, 2.0, 5.0, 20.0])
def test_two_routes_agree(e):
    assert omega2_from_coeffs(e) == pytest.approx(omega2_reduced(e), abs=1e-8)


def test_prolate_rejected():
    with pytest.raises(InvalidParams):
        maclaurin_omega2(0.5)


@settings(max_examples=20, deadline=None)
@given(e=st.floats(1.0, 1e3))
def test_spheroid_normalisation(e):
    s = spheroid(e)
    assert s.a**2 * s.c == pytest.approx(1.0, rel=1e-14)
    assert s.omega2 >= 0


def test_family_collapsed():
    fam = maclaurin_family(1.0, 1.0, 5)
    assert len(fam) == 1
    assert fam.rows()[0][0] == 1.0
    assert fam.rows()[0][1] == pytest.approx(0.0, abs=1e-12)


def test_family_interior_maximum():
    fam = maclaurin_family(1.0, 100.0, 200)
    assert len(fam) == 200
    assert 0 < fam.imax < 199
    w = fam.omega2
    assert np.all(np.diff(w[: fam.imax + 1]) > 0)
    assert np.all(np.diff(w[fam.imax :]) < 0)
    assert np.all(np.diff(fam.a) > 0)
    # dense-scan regression values
    assert fam.e[fam.imax] == pytest.approx(2.70, abs=0.03)
    assert w[fam.imax] == pytest.approx(1.41159, abs=2e-4)


@pytest.mark.parametrize("e, npts, bound", [(1.0, 50, 1e-10), (2.0, 20, 1e-8), (5.0, 50, 1e-8)])
def test_boundary_residual(e, npts, bound):
    assert boundary_residual(e, npts) < bound


def test_sphere_surface_potential():
    L = ellipsoid_coeffs(1.0, 1.0, 1.0)
    assert L.L0 - L.L1 == pytest.approx(4 * math.pi / 3, abs=1e-12)
    assert semi_axes(1.0) == (1.0, 1.0)

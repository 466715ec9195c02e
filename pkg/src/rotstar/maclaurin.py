"""Ellipsoid potential coefficients and the Maclaurin spheroid family.

Units: G = 1 and unit fluid density. Inside the ellipsoid with semi-axes
``(a, b, c)`` the potential is ``L0 - L1 x1^2 - L2 x2^2 - L3 x3^2``.
Spheroids are normalised to ``a**2 * c = 1`` and labelled by ``e = a/c``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams
from .quadrature import semi_infinite


@dataclass(frozen=True)
class EllipsoidCoeffs:
    L0: float
    L1: float
    L2: float
    L3: float

    def potential(self, x1, x2, x3):
        """Interior potential at ``(x1, x2, x3)``."""
        return self.L0 - self.L1 * x1**2 - self.L2 * x2**2 - self.L3 * x3**2


@dataclass(frozen=True)
class Spheroid:
    e: float
    a: float
    c: float
    omega2: float


@dataclass(frozen=True)
class MaclaurinFamily:
    e: np.ndarray
    a: np.ndarray
    c: np.ndarray
    omega2: np.ndarray
    imax: int

    def __len__(self):
        return len(self.e)

    def rows(self):
        return list(zip(self.e.tolist(), self.omega2.tolist()))


def ellipsoid_coeffs(a: float, b: float, c: float, tol: float = 1e-12) -> EllipsoidCoeffs:
    """Evaluate the four coefficient integrals by adaptive quadrature."""
    if min(a, b, c) <= 0:
        raise InvalidParams("semi-axes must be positive")
    a2, b2, c2 = a * a, b * b, c * c
    pref = np.pi * a * b * c

    def integrand(s):
        A, B, C = a2 + s, b2 + s, c2 + s
        base = 1.0 / np.sqrt(A * B * C)
        return np.stack([base, base / A, base / B, base / C])

    vals = pref * semi_infinite(integrand, tol=tol / pref)
    return EllipsoidCoeffs(*map(float, vals))


def semi_axes(e: float) -> tuple[float, float]:
    """``(a, c)`` with ``a/c = e`` and ``a**2 c = 1``."""
    return e ** (1.0 / 3.0), e ** (-2.0 / 3.0)


def _check_oblate(e):
    if not e >= 1.0:
        raise InvalidParams(f"Maclaurin spheroids need e >= 1 (oblate), got {e}")


def omega2_from_coeffs(e: float, tol: float = 1e-12) -> float:
    """``2 (L1 - (c/a)^2 L3)`` for the normalised spheroid."""
    _check_oblate(e)
    a, c = semi_axes(e)
    L = ellipsoid_coeffs(a, a, c, tol)
    return 2.0 * (L.L1 - (c * c) / (a * a) * L.L3)


def omega2_reduced(e: float, tol: float = 1e-12) -> float:
    """Twice the one-dimensional reduced integral in the ellipticity."""
    _check_oblate(e)
    e2 = e * e

    def integrand(s):
        p, w = 1.0 + s, 1.0 + e2 * s
        return (1.0 / p - 1.0 / w) / (p * np.sqrt(w))

    return float(2.0 * np.pi * semi_infinite(integrand, tol=tol / np.pi)[0])


def maclaurin_omega2(e: float, tol: float = 1e-12) -> float:
    """Squared angular velocity of the Maclaurin spheroid with ellipticity ``e``.

    Both the coefficient route and the reduced integral are evaluated; a
    disagreement beyond ``10 * tol`` raises ``ArithmeticError``.
    """
    w_coeff = omega2_from_coeffs(e, tol)
    w_red = omega2_reduced(e, tol)
    if abs(w_coeff - w_red) > 10 * tol * max(1.0, abs(w_red)):
        raise ArithmeticError(
            f"omega^2 routes disagree at e={e}: {w_coeff!r} vs {w_red!r}"
        )
    return w_red


def spheroid(e: float, tol: float = 1e-12) -> Spheroid:
    a, c = semi_axes(e)
    return Spheroid(e, a, c, maclaurin_omega2(e, tol))


def maclaurin_family(e_min: float, e_max: float, n: int, tol: float = 1e-12) -> MaclaurinFamily:
    """Sample the family on ``n`` geometrically spaced ellipticities.

    A collapsed range ``e_min == e_max`` yields the single member at that
    ellipticity. ``imax`` indexes the largest sampled ``omega2``.
    """
    _check_oblate(e_min)
    if e_max < e_min:
        raise InvalidParams("e_max must not be below e_min")
    if e_max == e_min:
        es = np.array([float(e_min)])
    else:
        if n < 2:
            raise InvalidParams("need at least two samples")
        es = np.geomspace(e_min, e_max, n)
    w = np.array([maclaurin_omega2(e, tol) for e in es])
    a, c = semi_axes(es)
    return MaclaurinFamily(es, a, c, w, int(np.argmax(w)))


def boundary_residual(e: float, npts: int = 50, tol: float = 1e-12) -> float:
    """Spread (max - min) of the rotating-frame potential on the surface.

    Samples ``npts`` points of the meridian from pole to equator and
    evaluates ``omega^2 r^2 / 2 + L0 - L1 r^2 - L3 z^2``.
    """
    _check_oblate(e)
    a, c = semi_axes(e)
    L = ellipsoid_coeffs(a, a, c, tol)
    w2 = 2.0 * (L.L1 - (c * c) / (a * a) * L.L3)
    theta = np.linspace(0.0, 0.5 * np.pi, npts)
    r2 = (a * np.sin(theta)) ** 2
    z2 = (c * np.cos(theta)) ** 2
    vals = 0.5 * w2 * r2 + L.L0 - L.L1 * r2 - L.L3 * z2
    return float(vals.max() - vals.min())

"""Radial Lane-Emden solutions, their masses and scaling laws.

The equation solved is ``u'' + (2/xi) u' + 4 pi u_+**q = 0`` with
``q = 1/(gamma - 1)``, ``u(0) = a`` and ``u'(0) = 0``; the density is
``rho = u_+**q`` (G = 1, unit polytropic constant).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import simpson, solve_ivp
from scipy.interpolate import CubicHermiteSpline

from .errors import InvalidParams, NoFiniteRadius

FOUR_PI = 4.0 * np.pi


@dataclass(frozen=True)
class PolytropeParams:
    """Adiabatic exponent ``gamma`` and central enthalpy ``a = u(0)``."""

    gamma: float
    a: float = 1.0

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise InvalidParams(f"gamma must exceed 1, got {self.gamma}")
        if not self.a > 0.0:
            raise InvalidParams(f"central value must be positive, got {self.a}")

    @property
    def q(self) -> float:
        return 1.0 / (self.gamma - 1.0)


@dataclass(frozen=True)
class RadialProfile:
    """Sampled radial solution from the centre out to the first zero ``R``.

    ``du`` holds ``u'(xi)`` at the same samples; ``M`` is the total mass.
    """

    gamma: float
    a: float
    xi: np.ndarray
    u: np.ndarray
    du: np.ndarray
    R: float
    M: float = field(default=np.nan)

    @property
    def q(self) -> float:
        return 1.0 / (self.gamma - 1.0)

    @property
    def rho(self) -> np.ndarray:
        return np.clip(self.u, 0.0, None) ** self.q

    def enthalpy(self, x) -> np.ndarray:
        """Cubic Hermite interpolant of ``u``; zero beyond ``R``."""
        x = np.asarray(x, dtype=float)
        spline = CubicHermiteSpline(self.xi, self.u, self.du)
        out = np.where(x < self.R, spline(np.clip(x, 0.0, self.R)), 0.0)
        return np.clip(out, 0.0, None)

    def density(self, x) -> np.ndarray:
        return self.enthalpy(x) ** self.q


def _series(xi, a: float, q: float):
    # regular-centre expansion u = a - (2 pi/3) a^q xi^2 + (2 pi^2 q/15) a^(2q-1) xi^4
    c2 = 2.0 * np.pi / 3.0 * a**q
    c4 = 2.0 * np.pi**2 * q / 15.0 * a ** (2.0 * q - 1.0)
    u = a - c2 * xi**2 + c4 * xi**4
    du = -2.0 * c2 * xi + 4.0 * c4 * xi**3
    return u, du


def solve_lane_emden(
    params: PolytropeParams,
    step: float = 1e-3,
    tol: float = 1e-12,
    xi_max: float = 100.0,
) -> RadialProfile:
    """Integrate the Lane-Emden equation out to its first zero.

    Parameters
    ----------
    params : PolytropeParams
    step : float
        Spacing of the returned samples (the integrator itself is adaptive).
    tol : float
        Relative tolerance of the integrator and of the zero location.
    xi_max : float
        Radius cutoff; reaching it without a sign change means the
        solution has no finite radius.

    Raises
    ------
    NoFiniteRadius
        If ``u`` stays positive up to ``xi_max`` (the case ``q >= 5``).
    """
    if not step > 0:
        raise InvalidParams("step must be positive")
    a, q = params.a, params.q
    lam = np.sqrt(FOUR_PI * a ** (q - 1.0))
    xi0 = min(1e-3 / lam, 0.5 * step)

    def rhs(x, y):
        u, v = y
        return [v, -2.0 * v / x - FOUR_PI * max(u, 0.0) ** q]

    def crossing(x, y):
        return y[0]

    crossing.terminal = True
    crossing.direction = -1

    u0, du0 = _series(xi0, a, q)
    sol = solve_ivp(
        rhs,
        (xi0, xi_max),
        [u0, du0],
        method="DOP853",
        rtol=tol,
        atol=tol * 1e-2 * a,
        events=crossing,
        dense_output=True,
    )
    if sol.status != 1 or len(sol.t_events[0]) == 0:
        raise NoFiniteRadius(
            f"u stays positive up to xi_max={xi_max:g} (q={q:.6g})"
        )
    R = float(sol.t_events[0][0])
    slope_R = float(sol.y_events[0][0][1])

    xi = np.arange(0.0, R, step)
    if R - xi[-1] < 1e-6 * step:
        xi = xi[:-1]
    xi = np.append(xi, R)
    u = np.empty_like(xi)
    du = np.empty_like(xi)
    inner = xi < xi0
    u[inner], du[inner] = _series(xi[inner], a, q)
    outer = ~inner
    dense = sol.sol(xi[outer])
    u[outer], du[outer] = dense[0], dense[1]
    u[-1], du[-1] = 0.0, slope_R

    prof = RadialProfile(params.gamma, a, xi, u, du, R)
    return _with_mass(prof)


def _with_mass(profile: RadialProfile) -> RadialProfile:
    return RadialProfile(
        profile.gamma, profile.a, profile.xi, profile.u, profile.du,
        profile.R, mass_of(profile),
    )


def mass_of(profile: RadialProfile) -> float:
    """Total mass ``int 4 pi xi^2 u_+^q`` by composite Simpson on the samples."""
    xi = np.asarray(profile.xi, dtype=float)
    if xi.size < 2:
        return 0.0
    integrand = FOUR_PI * xi**2 * profile.rho
    if not np.any(integrand):
        return 0.0
    return float(simpson(integrand, x=xi))


def mass_exponent(gamma: float) -> float:
    """Exponent of the power law ``M(a) ~ a**((3 gamma - 4)/(2 gamma - 2))``."""
    if not 6.0 / 5.0 < gamma <= 2.0:
        raise InvalidParams(f"mass exponent needs 6/5 < gamma <= 2, got {gamma}")
    return (3.0 * gamma - 4.0) / (2.0 * gamma - 2.0)


def rescale(profile: RadialProfile, lam: float) -> RadialProfile:
    """Apply the symmetry ``u(x) -> lam**p u(lam x)``, ``p = (2g-2)/(2-g)``."""
    if not lam > 0:
        raise InvalidParams("scale factor must be positive")
    if profile.gamma == 2.0:
        raise InvalidParams("scaling exponent is singular at gamma = 2")
    p = (2.0 * profile.gamma - 2.0) / (2.0 - profile.gamma)
    amp = lam**p
    scaled = RadialProfile(
        profile.gamma,
        profile.a * amp,
        profile.xi / lam,
        profile.u * amp,
        profile.du * amp * lam,
        profile.R / lam,
    )
    return _with_mass(scaled)


def central_value_for_mass(gamma: float, mass: float, **solve_kw) -> float:
    """Central value ``a`` whose radial solution carries ``mass``.

    Exact inversion of the power law anchored at ``a = 1``; undefined at
    ``gamma = 4/3`` where every central value gives the same mass.
    """
    if not mass > 0:
        raise InvalidParams("mass must be positive")
    e = mass_exponent(gamma)
    if abs(e) < 1e-12:
        raise InvalidParams("mass does not determine the central value at gamma = 4/3")
    m1 = solve_lane_emden(PolytropeParams(gamma, 1.0), **solve_kw).M
    return float((mass / m1) ** (1.0 / e))

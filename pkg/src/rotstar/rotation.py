"""Rotation laws ``omega^2(s)`` and their centrifugal potential ``j(r)``.

``j(r) = int_0^r omega^2(s) s ds`` is nondecreasing and tends to a finite
limit ``j_inf``; the remainder ``j_inf - j(r)`` decays like ``r**-delta``.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import InvalidParams

KINDS = ("power_decay", "gaussian", "tabulated")


@dataclass(frozen=True)
class RotationProfile:
    """A rotation law.

    kind : {"power_decay", "gaussian", "tabulated"}
        ``power_decay``: ``omega_bar**2 / (1 + s**2)**p``;
        ``gaussian``: ``omega_bar**2 * exp(-s**2)``;
        ``tabulated``: samples ``table = (s, omega2)`` starting at ``s = 0``.
    """

    kind: str = "power_decay"
    omega_bar: float = 1.0
    p: float = 2.0
    table: tuple | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidParams(f"unknown rotation kind {self.kind!r}")
        if self.kind == "power_decay" and not self.p > 1.0:
            raise InvalidParams(f"power_decay needs p > 1 for finite j_inf, got {self.p}")
        if self.kind == "tabulated":
            if self.table is None:
                raise InvalidParams("tabulated profile needs a table")
            s, w2 = (np.asarray(c, dtype=float) for c in self.table)
            if s.ndim != 1 or s.shape != w2.shape or s.size < 4:
                raise InvalidParams("table must be two equal-length columns, >= 4 rows")
            if s[0] != 0.0 or np.any(np.diff(s) <= 0):
                raise InvalidParams("table abscissae must start at 0 and increase")
            if np.any(w2 < 0):
                raise InvalidParams("omega^2 must be nonnegative")

    @classmethod
    def from_table(cls, s, omega2) -> "RotationProfile":
        return cls("tabulated", table=(tuple(map(float, s)), tuple(map(float, omega2))))

    @classmethod
    def from_file(cls, path) -> "RotationProfile":
        """Read a two-column ``s omega2`` text table (``#`` comments allowed)."""
        data = np.loadtxt(path, comments="#", ndmin=2)
        return cls.from_table(data[:, 0], data[:, 1])

    def omega2(self, s):
        s = np.asarray(s, dtype=float)
        if self.kind == "power_decay":
            return self.omega_bar**2 * (1.0 + s * s) ** (-self.p)
        if self.kind == "gaussian":
            return self.omega_bar**2 * np.exp(-s * s)
        ts, tw = self._table
        return np.interp(s, ts, tw, right=0.0)

    # -- tabulated internals -------------------------------------------------

    @property
    def _table(self):
        return tuple(np.asarray(c, dtype=float) for c in self.table)

    def _antiderivative(self):
        ts, tw = self._table
        return CubicSpline(ts, tw * ts).antiderivative()

    def _tail(self) -> tuple[float, float]:
        """Power-law tail ``(int_S^inf, delta)`` fitted to the last table rows."""
        ts, tw = self._table
        f = tw * ts
        if f[-1] == 0.0:
            return 0.0, math.inf
        s1, s2 = ts[-2], ts[-1]
        f1, f2 = f[-2], f[-1]
        if f1 <= 0.0 or f2 >= f1:
            raise InvalidParams("tabulated omega^2 s does not decay at the table end")
        beta = math.log(f1 / f2) / math.log(s2 / s1)
        if beta <= 1.0:
            raise InvalidParams(f"tail omega^2 s ~ s^-{beta:.3g} is not integrable")
        return f2 * s2 / (beta - 1.0), beta - 1.0


def j_of(profile: RotationProfile, r):
    """Centrifugal potential ``j(r)``; vectorised over ``r >= 0``."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise InvalidParams("r must be nonnegative")
    w2 = profile.omega_bar**2
    if profile.kind == "power_decay":
        p = profile.p
        return w2 / (2.0 * (p - 1.0)) * -np.expm1((1.0 - p) * np.log1p(r * r))
    if profile.kind == "gaussian":
        return -0.5 * w2 * np.expm1(-r * r)
    ts, _ = profile._table
    anti = profile._antiderivative()
    end = float(anti(ts[-1]))
    tail, _ = profile._tail()
    inside = anti(np.minimum(r, ts[-1]))
    beyond = r > ts[-1]
    if np.any(beyond):
        # continue with the fitted power tail
        _, delta = profile._tail()
        frac = np.where(beyond, (ts[-1] / np.maximum(r, ts[-1])) ** delta, 1.0)
        inside = np.where(beyond, end + tail * (1.0 - frac), inside)
    return inside


def j_infinity(profile: RotationProfile) -> float:
    """Limit of ``j(r)`` as ``r -> inf``.

    Tabulated profiles integrate the cubic spline of ``omega^2 s`` to the
    table end and add a power-law tail fitted to the last two rows; a
    nonintegrable tail raises ``InvalidParams``.
    """
    w2 = profile.omega_bar**2
    if profile.kind == "power_decay":
        return w2 / (2.0 * (profile.p - 1.0))
    if profile.kind == "gaussian":
        return 0.5 * w2
    ts, _ = profile._table
    tail, _ = profile._tail()
    return float(profile._antiderivative()(ts[-1])) + tail


def decay_exponent(profile: RotationProfile) -> float:
    """``delta`` in ``j_inf - j(r) = O(r**-delta)`` (``inf`` for Gaussian)."""
    if profile.kind == "power_decay":
        return 2.0 * (profile.p - 1.0)
    if profile.kind == "gaussian":
        return math.inf
    return profile._tail()[1]


def effective_radius(profile: RotationProfile, tol: float = 1e-6) -> float:
    """Smallest radius beyond which ``j_inf - j(r) < tol``."""
    jinf = j_infinity(profile)
    if jinf < tol:
        return 0.0
    if profile.kind == "power_decay":
        p = profile.p
        return math.sqrt((jinf / tol) ** (1.0 / (p - 1.0)) - 1.0)
    if profile.kind == "gaussian":
        return math.sqrt(math.log(jinf / tol))
    ts, _ = profile._table
    rem = jinf - j_of(profile, ts)
    idx = np.nonzero(rem >= tol)[0]
    if idx.size == 0:
        return 0.0
    if idx[-1] + 1 < ts.size:
        return float(ts[idx[-1] + 1])
    tail, delta = profile._tail()
    return float(ts[-1] * (tail / tol) ** (1.0 / delta))

"""Mass-constrained self-consistent field iteration for rotating polytropes.

For fixed rotation intensity ``kappa`` we look for a density and a constant
``alpha`` with

    rho = [U(rho) + kappa**2 j(r) + alpha]_+ ** (1/(gamma - 1)),
    int rho = M,

subject to the validity gap ``kappa**2 j_inf + alpha < -eps_boundary``.
Each sweep recomputes the potential, solves the scalar mass equation for
``alpha`` exactly and relaxes the density towards the new iterate.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
import logging
import warnings

import numpy as np
from scipy.optimize import brentq

from .errors import BoundaryHit, InvalidInit, NonConvergence, SupportOverflow
from .gravity import AxisymGrid, DensityField, PotentialField, potential, weighted_norm
from .rotation import RotationProfile, j_infinity, j_of

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SCFOptions:
    """Iteration controls.

    relax : weight of the new iterate, in (0, 1]
    tol : stop when ``max|rho_new - rho| <= tol * max(rho)``
    max_iter : iteration cap
    mass_tol : mass tolerance of the alpha solve, relative to ``M``
    eps_boundary : validity gap; ``None`` means ``1e-4 * |alpha|`` of the
        initial density's own constant
    s_norm : exponent of the weighted sup norm reported in diagnostics
    """

    relax: float = 0.5
    tol: float = 1e-8
    max_iter: int = 1000
    mass_tol: float = 1e-12
    eps_boundary: float | None = None
    s_norm: float = 4.0

    def __post_init__(self):
        if not 0.0 < self.relax <= 1.0:
            raise ValueError("relax must lie in (0, 1]")
        if not (self.tol > 0 and self.mass_tol > 0 and self.max_iter >= 1):
            raise ValueError("tol, mass_tol and max_iter must be positive")
        if self.eps_boundary is not None and not self.eps_boundary > 0:
            raise ValueError("eps_boundary must be positive")


@dataclass(frozen=True)
class Diagnostics:
    support_r: float = 0.0
    support_z: float = 0.0
    max_rho: float = 0.0
    norm_s: float = 0.0


@dataclass(frozen=True)
class StarState:
    rho: DensityField
    U: PotentialField
    alpha: float
    kappa: float
    gamma: float
    M_target: float
    rotation: RotationProfile
    eps_boundary: float
    diagnostics: Diagnostics = field(default_factory=Diagnostics)
    f1_sup: float = np.nan
    f2_mass: float = np.nan
    iterations: int = 0

    @property
    def grid(self) -> AxisymGrid:
        return self.rho.grid

    @property
    def boundary_gap(self) -> float:
        """``kappa**2 j_inf + alpha``; negative inside the validity region."""
        return self.kappa**2 * j_infinity(self.rotation) + self.alpha


def _mass_of_alpha(effective, volume, q):
    def g(alpha):
        return float(np.sum(volume * np.clip(effective + alpha, 0.0, None) ** q))

    return g


def solve_alpha(
    effective,
    grid: AxisymGrid,
    gamma: float,
    M: float,
    alpha_max: float = np.inf,
    mass_tol: float = 1e-12,
) -> float:
    """Constant ``alpha`` such that ``[effective + alpha]_+^q`` has mass ``M``.

    ``mass_tol`` is absolute. The mass is nondecreasing in ``alpha``, so the
    root is bracketed between ``-max(effective)`` (zero mass) and
    ``alpha_max``. ``M = 0`` returns ``-max(effective)``.

    Raises
    ------
    BoundaryHit
        If even ``alpha_max`` gives less than ``M - mass_tol``.
    """
    effective = np.asarray(effective, dtype=float)
    q = 1.0 / (gamma - 1.0)
    lo = -float(np.max(effective))
    if M == 0:
        return lo
    g = _mass_of_alpha(effective, grid.cell_volume, q)
    hi = alpha_max
    if not np.isfinite(hi):
        # grow until the bracket holds the target
        width = max(1.0, abs(lo))
        hi = lo + width
        while g(hi) < M:
            width *= 2.0
            hi = lo + width
    elif hi <= lo or g(hi) < M - mass_tol:
        raise BoundaryHit(
            f"mass {M:.6g} unreachable below alpha_max={alpha_max:.6g} "
            f"(reaches {g(hi) if hi > lo else 0.0:.6g})"
        )
    if abs(g(hi) - M) <= mass_tol:
        return float(hi)
    alpha = brentq(lambda a: g(a) - M, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)
    # brentq stops on the alpha scale; finish on the mass scale if needed
    a_lo, a_hi = lo, hi
    for _ in range(200):
        miss = g(alpha) - M
        if abs(miss) <= mass_tol:
            break
        if miss < 0:
            a_lo = alpha
        else:
            a_hi = alpha
        nxt = 0.5 * (a_lo + a_hi)
        if nxt in (a_lo, a_hi):
            break
        alpha = nxt
    return float(alpha)


def diagnostics(state_or_rho, s: float = 4.0) -> Diagnostics:
    """Support extents, peak density and weighted norm at node resolution."""
    rho = state_or_rho.rho if isinstance(state_or_rho, StarState) else state_or_rho
    g, v = rho.grid, rho.values
    if not np.any(v > 0):
        return Diagnostics()
    rows = np.nonzero(np.any(v > 0, axis=1))[0]
    cols = np.nonzero(np.any(v > 0, axis=0))[0]
    return Diagnostics(
        support_r=float(g.r[rows[-1]]),
        support_z=float(g.z[cols[-1]]),
        max_rho=float(v.max()),
        norm_s=weighted_norm(rho, s),
    )


def _touches_edge(values) -> bool:
    return bool(np.any(values[-1, :] > 0) or np.any(values[:, -1] > 0))


def residual_F(state: StarState) -> tuple[float, float]:
    """``(sup |F1|, |F2|)`` with the potential recomputed from ``state.rho``.

    The mass defect is taken as the larger of ``|int rho - M|`` and the
    defect of the fixed-point image ``[U + kappa^2 j + alpha]_+^q``; the two
    coincide at a solution, and the second exposes an inconsistent ``alpha``.
    """
    g = state.grid
    q = 1.0 / (state.gamma - 1.0)
    U = potential(state.rho).values
    cent = state.kappa**2 * j_of(state.rotation, g.r)[:, None]
    image = np.clip(U + cent + state.alpha, 0.0, None) ** q
    f1 = float(np.max(np.abs(state.rho.values - image)))
    f2 = max(abs(state.rho.mass - state.M_target), abs(g.integrate(image) - state.M_target))
    return f1, f2


def scf_solve(
    init: DensityField,
    kappa: float,
    gamma: float,
    M: float,
    profile: RotationProfile,
    opts: SCFOptions = SCFOptions(),
) -> StarState:
    """Converge the fixed-point problem at rotation intensity ``kappa``.

    ``init`` is rescaled to mass ``M`` before the first sweep so that every
    relaxed iterate carries exactly the target mass.

    Raises
    ------
    InvalidInit
        ``init`` has no mass.
    BoundaryHit
        The alpha solve left the validity region.
    SupportOverflow
        An iterate is positive on the outermost grid ring.
    NonConvergence
        ``opts.max_iter`` sweeps without meeting ``opts.tol``.
    """
    if not init.mass > 0:
        raise InvalidInit("initial density carries no mass")
    if not 6.0 / 5.0 < gamma < 2.0 or abs(gamma - 4.0 / 3.0) < 1e-12:
        warnings.warn(
            f"gamma={gamma:g} is outside (6/5, 2) minus {{4/3}}; "
            "the continuation theory does not cover it",
            stacklevel=2,
        )
    grid = init.grid
    q = 1.0 / (gamma - 1.0)
    volume = grid.cell_volume
    abs_mass_tol = opts.mass_tol * M
    cent = kappa**2 * j_of(profile, grid.r)[:, None]
    jinf = j_infinity(profile)

    rho = init.values * (M / init.mass)
    eps = opts.eps_boundary
    if eps is None:
        eff0 = potential(DensityField(grid, rho)).values
        eps = 1e-4 * abs(solve_alpha(eff0, grid, gamma, M, mass_tol=abs_mass_tol))
    alpha_max = -kappa**2 * jinf - eps

    theta = opts.relax
    for it in range(1, opts.max_iter + 1):
        eff = potential(DensityField(grid, rho)).values + cent
        alpha = solve_alpha(eff, grid, gamma, M, alpha_max, abs_mass_tol)
        target = np.clip(eff + alpha, 0.0, None) ** q
        if _touches_edge(target):
            raise SupportOverflow(f"density reached the grid edge at sweep {it}")
        new = (1.0 - theta) * rho + theta * target
        # keep the mass exact against rounding drift
        new *= M / float(np.sum(new * volume))
        change = float(np.max(np.abs(new - rho)))
        scale = float(np.max(rho))
        rho = new
        if change <= opts.tol * scale:
            break
    else:
        raise NonConvergence(
            f"no convergence in {opts.max_iter} sweeps at kappa={kappa:g} "
            f"(last change {change / scale:.3e} of max density)"
        )

    dens = DensityField(grid, rho)
    U = potential(dens)
    alpha = solve_alpha(U.values + cent, grid, gamma, M, alpha_max, abs_mass_tol)
    log.debug("kappa=%g converged in %d sweeps, alpha=%.12g", kappa, it, alpha)
    state = StarState(
        rho=dens,
        U=U,
        alpha=alpha,
        kappa=float(kappa),
        gamma=float(gamma),
        M_target=float(M),
        rotation=profile,
        eps_boundary=float(eps),
        diagnostics=diagnostics(dens, opts.s_norm),
        iterations=it,
    )
    f1, f2 = residual_F(state)
    return replace(state, f1_sup=f1, f2_mass=f2)

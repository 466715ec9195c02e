"""Natural-parameter continuation in the rotation intensity ``kappa``.

Starting from a converged non-rotating state, ``kappa`` is advanced in steps,
each SCF solve warm-started from the previous density. Failed solves halve
the step. The run ends with exactly one classified termination.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from enum import Enum
import logging
from typing import Callable
import warnings

import numpy as np

from .errors import BoundaryHit, InvalidParams, NonConvergence, SupportOverflow
from .radial import PolytropeParams, solve_lane_emden
from .rotation import RotationProfile
from .scf import SCFOptions, StarState, scf_solve

log = logging.getLogger(__name__)

CSV_HEADER = "kappa,alpha,max_rho,support_r,support_z,norm_s,f1_sup,f2_mass,scf_iters"


class TerminationKind(str, Enum):
    SupportBlowup = "SupportBlowup"
    DensityBlowup = "DensityBlowup"
    BoundaryProximity = "BoundaryProximity"
    MaxKappaReached = "MaxKappaReached"
    ConvergenceFailure = "ConvergenceFailure"


@dataclass(frozen=True)
class Termination:
    kind: TerminationKind
    detail: str = ""


@dataclass(frozen=True)
class FamilyRecord:
    kappa: float
    alpha: float
    max_rho: float
    support_r: float
    support_z: float
    norm_s: float
    f1_sup: float
    f2_mass: float
    scf_iters: int

    @classmethod
    def from_state(cls, state: StarState) -> "FamilyRecord":
        d = state.diagnostics
        return cls(
            state.kappa, state.alpha, d.max_rho, d.support_r, d.support_z,
            d.norm_s, state.f1_sup, state.f2_mass, state.iterations,
        )

    def csv_row(self) -> str:
        vals = [getattr(self, f.name) for f in fields(self)]
        return ",".join(str(v) if isinstance(v, int) else f"{v:.17g}" for v in vals)


@dataclass(frozen=True)
class Limits:
    """Grid-scale surrogates for unbounded support and density."""

    support_frac: float = 0.95
    rho_factor: float = 50.0

    def __post_init__(self):
        if not 0.0 < self.support_frac < 1.0:
            raise InvalidParams("support_frac must lie in (0, 1)")
        if not self.rho_factor > 1.0:
            raise InvalidParams("rho_factor must exceed 1")


def mass_slope_check(gamma: float, a0: float, rel_step: float = 1e-3) -> float:
    """Centred difference ``dM/da`` of the radial mass at ``a0``."""
    if not 6.0 / 5.0 < gamma <= 2.0:
        raise InvalidParams(f"mass slope check needs 6/5 < gamma <= 2, got {gamma}")
    h = rel_step * a0
    m_plus = solve_lane_emden(PolytropeParams(gamma, a0 + h)).M
    m_minus = solve_lane_emden(PolytropeParams(gamma, a0 - h)).M
    return (m_plus - m_minus) / (2.0 * h)


def slope_is_degenerate(gamma: float, a0: float) -> bool:
    """True when ``|M'(a0)|`` is below ``1e-6 * M(a0) / a0``."""
    m0 = solve_lane_emden(PolytropeParams(gamma, a0)).M
    return abs(mass_slope_check(gamma, a0)) < 1e-6 * m0 / a0


def require_mass_slope(gamma: float, a0: float) -> None:
    """Warn and raise ``InvalidParams`` when ``M'(a0)`` is degenerate."""
    if slope_is_degenerate(gamma, a0):
        msg = (
            f"M'(a) vanishes at gamma={gamma:g}, a0={a0:g}: the local "
            "solution curve is not theoretically grounded"
        )
        warnings.warn(msg, stacklevel=3)
        raise InvalidParams(msg)


def _classify(state: StarState, seed_rho: float, limits: Limits) -> Termination | None:
    d = state.diagnostics
    rmax = state.grid.rmax
    if d.support_r > limits.support_frac * rmax:
        return Termination(
            TerminationKind.SupportBlowup,
            f"support_r={d.support_r:.6g} > {limits.support_frac:g} * rmax={rmax:.6g}",
        )
    if d.max_rho > limits.rho_factor * seed_rho:
        return Termination(
            TerminationKind.DensityBlowup,
            f"max_rho={d.max_rho:.6g} > {limits.rho_factor:g} * seed {seed_rho:.6g}",
        )
    if state.boundary_gap > -state.eps_boundary:
        return Termination(
            TerminationKind.BoundaryProximity,
            f"kappa^2 j_inf + alpha = {state.boundary_gap:.6g}",
        )
    return None


def continue_family(
    seed: StarState,
    profile: RotationProfile,
    kappa_max: float,
    step0: float,
    step_min: float,
    opts: SCFOptions = SCFOptions(),
    limits: Limits = Limits(),
    on_state: Callable[[StarState], None] | None = None,
    check_mass_slope: bool = True,
) -> tuple[list[FamilyRecord], Termination]:
    """Continue ``seed`` in ``kappa`` until a termination condition fires.

    After each converged step the state is classified in the order
    SupportBlowup, DensityBlowup, BoundaryProximity; the run stops with
    MaxKappaReached when the next step would pass ``kappa_max``. A
    solve that fails is retried from the same predecessor with half the
    step; once the step drops below ``step_min`` the run ends as
    BoundaryProximity if the last failure was a BoundaryHit, SupportBlowup
    if it was a SupportOverflow, and ConvergenceFailure otherwise.

    ``on_state`` is called with every accepted state, seed included.

    Raises
    ------
    InvalidParams
        Bad step sizes, or a seed whose radial mass is stationary in the
        central value (``M'(a0) = 0``) while ``check_mass_slope`` is set.
    """
    if not step0 >= step_min > 0:
        raise InvalidParams("need step0 >= step_min > 0")
    if seed.kappa != 0.0:
        raise InvalidParams("seed must be non-rotating")
    gamma = seed.gamma
    seed_rho = seed.diagnostics.max_rho
    if check_mass_slope:
        require_mass_slope(gamma, seed_rho ** (gamma - 1.0))
    opts = replace(opts, eps_boundary=seed.eps_boundary)

    records = [FamilyRecord.from_state(seed)]
    if on_state is not None:
        on_state(seed)
    state = seed
    step = step0
    while True:
        kappa = state.kappa + step
        if kappa > kappa_max * (1.0 + 1e-12):
            return records, Termination(
                TerminationKind.MaxKappaReached,
                f"next kappa {kappa:.6g} exceeds kappa_max={kappa_max:g}",
            )
        try:
            nxt = scf_solve(state.rho, kappa, gamma, seed.M_target, profile, opts)
        except (NonConvergence, BoundaryHit, SupportOverflow) as exc:
            step *= 0.5
            log.info("kappa=%.6g failed (%s); step -> %.3g", kappa, type(exc).__name__, step)
            if step < step_min:
                if isinstance(exc, BoundaryHit):
                    kind = TerminationKind.BoundaryProximity
                elif isinstance(exc, SupportOverflow):
                    kind = TerminationKind.SupportBlowup
                else:
                    kind = TerminationKind.ConvergenceFailure
                return records, Termination(kind, f"at kappa={kappa:.6g}: {exc}")
            continue
        if nxt.diagnostics.max_rho < 0.5 * state.diagnostics.max_rho:
            log.warning(
                "kappa=%.6g: peak density fell from %.4g to %.4g in one step; "
                "the branch may have folded back", kappa,
                state.diagnostics.max_rho, nxt.diagnostics.max_rho,
            )
        state = nxt
        records.append(FamilyRecord.from_state(state))
        if on_state is not None:
            on_state(state)
        verdict = _classify(state, seed_rho, limits)
        if verdict is not None:
            return records, verdict


def write_family_csv(path, records, termination: Termination) -> None:
    lines = [CSV_HEADER] + [r.csv_row() for r in records]
    lines.append(f"# termination={termination.kind.value}")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_family_csv(path) -> tuple[list[FamilyRecord], str | None]:
    records, kind = [], None
    with open(path) as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise ValueError(f"unexpected family CSV header {header!r}")
        for line in fh:
            line = line.strip()
            if line.startswith("# termination="):
                kind = line.split("=", 1)[1]
            elif line:
                *vals, iters = line.split(",")
                records.append(FamilyRecord(*map(float, vals), int(iters)))
    return records, kind


def records_array(records) -> dict[str, np.ndarray]:
    """Column view of a record list, keyed by CSV field name."""
    return {f.name: np.array([getattr(r, f.name) for r in records]) for f in fields(FamilyRecord)}

"""Command-line front end.

Exit codes: 0 success, 2 configuration error, 3 no finite radius,
4 non-convergence (including support overflow and continuation failure),
5 boundary hit.
"""

from __future__ import annotations

import argparse
from dataclasses import replace
import logging
import math
from pathlib import Path
import sys

import numpy as np

from . import continuation as cont
from .config import RunConfig, load_config
from .errors import (
    BoundaryHit,
    ConfigError,
    InvalidInit,
    InvalidParams,
    NoFiniteRadius,
    NonConvergence,
    SupportOverflow,
)
from .gravity import AxisymGrid, DensityField, write_grid_dump
from .maclaurin import boundary_residual, maclaurin_family
from .radial import PolytropeParams, central_value_for_mass, solve_lane_emden
from .rotation import RotationProfile
from .scf import SCFOptions, scf_solve

EXIT_OK, EXIT_CONFIG, EXIT_NO_RADIUS, EXIT_NONCONVERGENCE, EXIT_BOUNDARY = 0, 2, 3, 4, 5

log = logging.getLogger("rotstar")


def _fmt(x) -> str:
    return f"{x:.17g}"


def _radial_kw(cfg: RunConfig) -> dict:
    return {
        "step": cfg.get("radial.step", 1e-3),
        "tol": cfg.get("radial.tol", 1e-12),
        "xi_max": cfg.get("radial.xi_max", 100.0),
    }


def _seed_profile(cfg: RunConfig):
    gamma = cfg.get("gamma")
    if gamma is None:
        raise ConfigError("key 'gamma' is required")
    kw = _radial_kw(cfg)
    if "mass" in cfg:
        try:
            a = central_value_for_mass(gamma, cfg.get("mass"), **kw)
        except InvalidParams as exc:
            raise ConfigError(f"key 'mass': {exc}") from None
    else:
        a = cfg.get("central_value", 1.0)
    return solve_lane_emden(PolytropeParams(gamma, a), **kw)


def _rotation(cfg: RunConfig) -> RotationProfile:
    kind = cfg.get("rotation.kind", "power_decay")
    try:
        if kind == "tabulated":
            prof = RotationProfile.from_file(cfg.get("rotation.table_path"))
            if "rotation.omega_bar" in cfg:
                prof = RotationProfile("tabulated", cfg.get("rotation.omega_bar"), table=prof.table)
            return prof
        return RotationProfile(kind, cfg.get("rotation.omega_bar", 1.0), cfg.get("rotation.p", 2.0))
    except (OSError, ValueError) as exc:
        raise ConfigError(f"key 'rotation.*': {exc}") from None


def _grid(cfg: RunConfig, seed_radius: float) -> AxisymGrid:
    extent = 4.0 * seed_radius
    return AxisymGrid(
        cfg.get("grid.nr", 128),
        cfg.get("grid.nz", 128),
        cfg.get("grid.rmax", extent),
        cfg.get("grid.zmax", extent),
    )


def _scf_options(cfg: RunConfig) -> SCFOptions:
    return SCFOptions(
        relax=cfg.get("scf.relax", 0.5),
        tol=cfg.get("scf.tol", 1e-8),
        max_iter=cfg.get("scf.max_iter", 1000),
        mass_tol=cfg.get("scf.mass_tol", 1e-12),
        eps_boundary=cfg.get("scf.eps_boundary"),
        s_norm=cfg.get("norm.s", 4.0),
    )


def _seed_density(profile, grid) -> DensityField:
    init = DensityField.from_radial(grid, profile)
    if _touches(init):
        raise ConfigError("grid too small: the seed density reaches the grid edge")
    return init


def _seed_state(profile, grid, rotation, opts):
    init = _seed_density(profile, grid)
    return scf_solve(init, 0.0, profile.gamma, profile.M, rotation, opts)


def _touches(rho: DensityField) -> bool:
    v = rho.values
    return bool(np.any(v[-1, :] > 0) or np.any(v[:, -1] > 0))


def cmd_lane_emden(cfg: RunConfig, out: Path) -> int:
    """Solve the radial problem; print R and M; write ``lane_emden.csv``."""
    profile = _seed_profile(cfg)
    print(f"R = {_fmt(profile.R)}")
    print(f"M = {_fmt(profile.M)}")
    lines = ["xi,u,rho"]
    lines += [f"{_fmt(x)},{_fmt(u)},{_fmt(r)}" for x, u, r in zip(profile.xi, profile.u, profile.rho)]
    (out / "lane_emden.csv").write_text("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_maclaurin(cfg: RunConfig, out: Path) -> int:
    """Sample the Maclaurin family; write ``maclaurin.csv``."""
    e_min = cfg.get("maclaurin.e_min", 1.0)
    e_max = cfg.get("maclaurin.e_max", 100.0)
    if e_max < e_min:
        raise ConfigError("key 'maclaurin.e_max' must not be below maclaurin.e_min")
    n = cfg.get("maclaurin.n", 200)
    npts = cfg.get("maclaurin.npts", 50)
    tol = cfg.get("maclaurin.tol", 1e-12)
    fam = maclaurin_family(e_min, e_max, n, tol)
    lines = ["e,a,c,omega2,boundary_residual"]
    for e, a, c, w in zip(fam.e, fam.a, fam.c, fam.omega2):
        res = boundary_residual(e, npts, tol)
        lines.append(",".join(_fmt(v) for v in (e, a, c, w, res)))
    (out / "maclaurin.csv").write_text("\n".join(lines) + "\n")
    i = fam.imax
    print(f"max omega2 = {_fmt(fam.omega2[i])} at e = {_fmt(fam.e[i])}")
    return EXIT_OK


def cmd_solve(cfg: RunConfig, out: Path) -> int:
    """Converge one rotating star; write ``solution.grid`` and ``family.csv``."""
    profile = _seed_profile(cfg)
    rotation = _rotation(cfg)
    grid = _grid(cfg, profile.R)
    opts = _scf_options(cfg)
    kappa = cfg.get("kappa", 0.0)
    if opts.eps_boundary is None:
        # the seed's own constant is alpha_0 = -M/R
        opts = replace(opts, eps_boundary=1e-4 * profile.M / profile.R)
    init = _seed_density(profile, grid)
    state = scf_solve(init, kappa, profile.gamma, profile.M, rotation, opts)
    write_grid_dump(out / "solution.grid", state.rho, state.U)
    rec = cont.FamilyRecord.from_state(state)
    (out / "family.csv").write_text(cont.CSV_HEADER + "\n" + rec.csv_row() + "\n")
    print(f"alpha = {_fmt(state.alpha)}")
    print(f"iterations = {state.iterations}")
    return EXIT_OK


def cmd_continue(cfg: RunConfig, out: Path) -> int:
    """Continue in kappa; write ``family.csv`` and optional grid snapshots."""
    profile = _seed_profile(cfg)
    rotation = _rotation(cfg)
    grid = _grid(cfg, profile.R)
    opts = _scf_options(cfg)
    if opts.eps_boundary is None:
        opts = replace(opts, eps_boundary=1e-4 * profile.M / profile.R)
    limits = cont.Limits(
        cfg.get("continuation.support_frac", 0.95), cfg.get("continuation.rho_factor", 50.0)
    )
    step0 = cfg.get("continuation.step0", 0.025)
    step_min = cfg.get("continuation.step_min", step0 / 64)
    if step_min > step0:
        raise ConfigError("key 'continuation.step_min' must not exceed continuation.step0")
    every = cfg.get("continuation.snapshot_every", 0)
    try:
        cont.require_mass_slope(profile.gamma, profile.a)
    except InvalidParams as exc:
        raise ConfigError(str(exc)) from None
    seed = _seed_state(profile, grid, rotation, opts)

    counter = {"n": -1}

    def snapshot(state):
        counter["n"] += 1
        n = counter["n"]
        if every and n > 0 and n % every == 0:
            write_grid_dump(out / f"snapshot_{n:04d}.grid", state.rho, state.U)

    records, term = cont.continue_family(
        seed, rotation, cfg.get("continuation.kappa_max", math.inf), step0, step_min,
        opts, limits, on_state=snapshot, check_mass_slope=False,
    )
    cont.write_family_csv(out / "family.csv", records, term)
    print(f"records = {len(records)}")
    print(f"termination = {term.kind.value} ({term.detail})")
    if term.kind is cont.TerminationKind.ConvergenceFailure:
        return EXIT_NONCONVERGENCE
    return EXIT_OK


COMMANDS = {
    "lane-emden": cmd_lane_emden,
    "maclaurin": cmd_maclaurin,
    "solve": cmd_solve,
    "continue": cmd_continue,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, default=argparse.SUPPRESS, help="config file")
    common.add_argument("--out", type=Path, default=argparse.SUPPRESS, help="output directory")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
    parser = argparse.ArgumentParser(prog="rotstar", description=__doc__.split("\n")[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=fn.__doc__.split("\n")[0])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    verbose = getattr(args, "verbose", False)
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, format="%(message)s")
    out = getattr(args, "out", Path("."))
    try:
        cfg_path = getattr(args, "config", None)
        cfg = load_config(cfg_path) if cfg_path is not None else RunConfig()
        out.mkdir(parents=True, exist_ok=True)
        return COMMANDS[args.command](cfg, out)
    except (ConfigError, InvalidParams, InvalidInit) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NoFiniteRadius as exc:
        print(f"no finite radius: {exc}", file=sys.stderr)
        return EXIT_NO_RADIUS
    except (NonConvergence, SupportOverflow) as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except BoundaryHit as exc:
        print(f"boundary hit: {exc}", file=sys.stderr)
        return EXIT_BOUNDARY


if __name__ == "__main__":
    sys.exit(main())

"""
Following the family in kappa
=============================

Each step warm-starts the SCF solve from the previous density. The run
stops when the support nears the grid edge, the peak density grows past a
set factor, the validity gap closes, or the step can no longer be halved.
Near kappa = 0.6 this family loses its compact core and spreads out, which
the support criterion reports.
"""

import math

from rotstar import (
    AxisymGrid,
    DensityField,
    PolytropeParams,
    RotationProfile,
    SCFOptions,
    continue_family,
    scf_solve,
    solve_lane_emden,
)
from rotstar.continuation import records_array

prof = solve_lane_emden(PolytropeParams(1.5, 1.0))
ext = 4 * prof.R
grid = AxisymGrid(64, 64, ext, ext)
rot = RotationProfile("power_decay", 1.0, 2.0)
opts = SCFOptions(eps_boundary=1e-4 * prof.M / prof.R)
seed = scf_solve(DensityField.from_radial(grid, prof), 0.0, 1.5, prof.M, rot, opts)

records, term = continue_family(seed, rot, math.inf, 0.05, 0.05 / 64, opts)
print(f"{len(records)} records, stopped with {term.kind.value}: {term.detail}")
print(" kappa    alpha     max_rho  support_r support_z  sweeps")
for r in records:
    print(f"{r.kappa:6.4f} {r.alpha:9.5f} {r.max_rho:9.5f} {r.support_r:9.4f} {r.support_z:9.4f} {r.scf_iters:6d}")

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    cols = records_array(records)
    fig, ax = plt.subplots()
    ax.plot(cols["kappa"], cols["max_rho"], "o-", label="peak density")
    ax.plot(cols["kappa"], cols["support_r"] / cols["support_r"][0], "s-", label="support_r / seed")
    ax.set_xlabel("kappa")
    ax.legend()
    fig.savefig("continuation.png", dpi=120)

"""Equilibria of rotating self-gravitating fluids.

Maclaurin spheroids, Lane-Emden polytropes, and compressible rotating stars
computed by mass-constrained self-consistent field iteration and continued
in the rotation intensity.
"""

from .errors import (
    BoundaryHit,
    ConfigError,
    InvalidInit,
    InvalidParams,
    NoFiniteRadius,
    NonConvergence,
    QuadratureFailure,
    RotstarError,
    SupportOverflow,
)
from .radial import (
    PolytropeParams,
    RadialProfile,
    mass_exponent,
    mass_of,
    rescale,
    solve_lane_emden,
)
from .maclaurin import (
    EllipsoidCoeffs,
    boundary_residual,
    ellipsoid_coeffs,
    maclaurin_family,
    maclaurin_omega2,
)
from .rotation import RotationProfile, j_infinity, j_of
from .gravity import (
    AxisymGrid,
    DensityField,
    PotentialField,
    elliptic_K,
    potential,
    potential_at,
    weighted_norm,
)
from .scf import SCFOptions, StarState, diagnostics, residual_F, scf_solve, solve_alpha
from .continuation import (
    FamilyRecord,
    Limits,
    Termination,
    TerminationKind,
    continue_family,
    mass_slope_check,
)

__version__ = "0.1.0"

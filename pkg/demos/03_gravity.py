"""
Axisymmetric potential
======================

The Newtonian potential of an axisymmetric, z-even density is a sum over
rings. Each ring contributes ``4 K(k) / sqrt((r + r')^2 + dz^2)``; cells
near the target are averaged with sub-cell quadrature.
"""

import math

import numpy as np

from rotstar import AxisymGrid, potential, potential_at
from rotstar.gravity import spheroid_density
from rotstar.maclaurin import ellipsoid_coeffs, semi_axes


def ball_error(n):
    g = AxisymGrid(n, n, 1.5, 1.5)
    U = potential(spheroid_density(g, 1.0, 1.0)).values
    d = np.hypot(*g.mesh())
    exact = np.where(d <= 1, 2 * math.pi * (1 - d**2 / 3), 4 * math.pi / (3 * np.maximum(d, 1e-300)))
    return np.max(np.abs(U - exact) / exact)


errs = {n: ball_error(n) for n in (32, 64, 128)}
for n, e in errs.items():
    print(f"uniform ball, {n}x{n}: max relative error {e:.2e}")
print("observed order 64 -> 128:", math.log2(errs[64] / errs[128]))

# far field: potential of a compact body looks like M/|x|
g = AxisymGrid(128, 128, 3.5, 3.5)
ball = spheroid_density(g, 1.0, 1.0)
print("U(3, 0) * 3 / M =", potential_at(ball, 3.0, 0.0) * 3 / ball.mass)

# %%
# Inside a uniform spheroid the potential is the quadratic L0 - L1 r^2 - L3 z^2.

a, c = semi_axes(2.0)
g = AxisymGrid(128, 128, 1.2 * a, 1.2 * a)
U = potential(spheroid_density(g, a, c)).values
L = ellipsoid_coeffs(a, a, c)
R, Z = g.mesh()
inside = (R / a) ** 2 + (Z / c) ** 2 < 0.9
print("spheroid interior error:", np.max(np.abs(U - L.potential(R, 0, Z))[inside] / U[inside]))

"""
Non-rotating polytropes
=======================

The radial problem ``u'' + (2/xi) u' + 4 pi u_+^q = 0`` with ``u(0) = a``
fixes the density ``rho = u_+^q`` of a star at rest. For gamma = 2 the
solution is known in closed form, which makes a good first check.
"""

import math

import numpy as np

from rotstar import PolytropeParams, mass_exponent, solve_lane_emden

# gamma = 2: a sinc profile whose radius does not depend on the centre value
prof = solve_lane_emden(PolytropeParams(2.0, 1.0))
print(f"gamma = 2  R = {prof.R:.12f}  (sqrt(pi)/2 = {math.sqrt(math.pi) / 2:.12f})")
print(f"           M = {prof.M:.12f}")

x = np.linspace(0.05, 0.85, 5)
exact = np.sin(2 * math.sqrt(math.pi) * x) / (2 * math.sqrt(math.pi) * x)
print("max |u - closed form| on a few radii:", np.max(np.abs(prof.enthalpy(x) - exact)))

# %%
# Mass against central value
# --------------------------
# M(a) is a power law; the exponent changes sign at gamma = 4/3, where every
# central value carries the same mass.

a = np.geomspace(0.5, 2.0, 7)
for gamma in (1.3, 4 / 3, 1.5, 1.8):
    M = [solve_lane_emden(PolytropeParams(gamma, ai)).M for ai in a]
    slope = np.polyfit(np.log(a), np.log(M), 1)[0]
    print(f"gamma = {gamma:.4f}: fitted slope {slope:+.6f}, predicted {mass_exponent(gamma):+.6f}")

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots()
    for gamma in (1.3, 1.5, 1.8, 2.0):
        p = solve_lane_emden(PolytropeParams(gamma, 1.0))
        ax.plot(p.xi, p.rho, label=f"gamma = {gamma}")
    ax.set_xlabel("xi")
    ax.set_ylabel("rho")
    ax.legend()
    fig.savefig("lane_emden.png", dpi=120)

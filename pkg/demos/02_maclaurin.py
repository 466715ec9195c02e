"""
Maclaurin spheroids
===================

A uniform oblate spheroid with semi-axes ``a = b`` and ``c`` rotates
rigidly in equilibrium when the rotating-frame potential is constant on its
surface. With the volume normalised to ``a^2 c = 1`` the family is labelled by
``e = a / c``.
"""

import numpy as np

from rotstar import boundary_residual, ellipsoid_coeffs, maclaurin_family

# the coefficients of a general ellipsoid satisfy L1 + L2 + L3 = 2 pi
L = ellipsoid_coeffs(2.0, 1.0, 0.5)
print(L)
print("trace - 2 pi =", L.L1 + L.L2 + L.L3 - 2 * np.pi)

fam = maclaurin_family(1.0, 100.0, 200)
i = fam.imax
print(f"largest omega^2 = {fam.omega2[i]:.6f} at e = {fam.e[i]:.4f}")
print(f"omega^2 at e = 100: {fam.omega2[-1]:.3e}  (the spin rate does not blow up)")
print(f"equatorial radius grows to a = {fam.a[-1]:.3f}")

# the surface potential is constant to quadrature accuracy
for e in (1.0, 2.0, 5.0, 20.0):
    print(f"e = {e:5.1f}: boundary spread {boundary_residual(e, 50):.2e}")

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots()
    ax.semilogx(fam.e, fam.omega2)
    ax.set_xlabel("e = a/c")
    ax.set_ylabel("omega0^2")
    fig.savefig("maclaurin.png", dpi=120)

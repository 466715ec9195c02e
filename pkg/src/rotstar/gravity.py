"""Newtonian potential of axisymmetric, z-even densities on a cylindrical grid.

Fields live on the nodes ``r_i = i*dr`` (``i = 0..nr``) and ``z_k = k*dz``
(``k = 0..nz``) of the upper half plane; the lower half is implied by mirror
symmetry. Each node owns the cell ``[r_i - dr/2, r_i + dr/2] x
[z_k - dz/2, z_k + dz/2]`` clipped to the domain.

The potential ``U = int rho(x') / |x - x'| dx'`` is evaluated with the
azimuthally integrated ring kernel

    G(r, r', dz) = 4 K(k) / sqrt((r + r')**2 + dz**2),
    k**2 = 4 r r' / ((r + r')**2 + dz**2),

so that ``U(r, z) = int int G(r, r', z - z') rho(r', z') r' dr' dz'``.
Kernel cell averages are tabulated once per grid; the z sums are then a
discrete convolution done with FFTs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from pathlib import Path

import numpy as np
from scipy import fft as sfft

from .errors import InvalidParams

# cells whose modulus at the target exceeds this get sub-cell quadrature
K_SINGULAR = 0.999
_GAUSS_X, _GAUSS_W = np.polynomial.legendre.leggauss(4)


@dataclass(frozen=True)
class AxisymGrid:
    nr: int
    nz: int
    rmax: float
    zmax: float

    def __post_init__(self):
        if self.nr < 2 or self.nz < 2:
            raise InvalidParams("grid needs at least two cells per direction")
        if not (self.rmax > 0 and self.zmax > 0):
            raise InvalidParams("grid extents must be positive")

    @property
    def dr(self) -> float:
        return self.rmax / self.nr

    @property
    def dz(self) -> float:
        return self.zmax / self.nz

    @property
    def shape(self) -> tuple[int, int]:
        return self.nr + 1, self.nz + 1

    @cached_property
    def r(self) -> np.ndarray:
        return np.arange(self.nr + 1) * self.dr

    @cached_property
    def z(self) -> np.ndarray:
        return np.arange(self.nz + 1) * self.dz

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """``(R, Z)`` node coordinates, indexed ``[i, k]``."""
        return np.meshgrid(self.r, self.z, indexing="ij")

    @cached_property
    def r_edges(self) -> tuple[np.ndarray, np.ndarray]:
        lo = np.clip(self.r - 0.5 * self.dr, 0.0, self.rmax)
        hi = np.clip(self.r + 0.5 * self.dr, 0.0, self.rmax)
        return lo, hi

    @cached_property
    def z_edges(self) -> tuple[np.ndarray, np.ndarray]:
        lo = np.clip(self.z - 0.5 * self.dz, 0.0, self.zmax)
        hi = np.clip(self.z + 0.5 * self.dz, 0.0, self.zmax)
        return lo, hi

    @cached_property
    def r_weights(self) -> np.ndarray:
        """``int r dr`` over each radial cell."""
        lo, hi = self.r_edges
        return 0.5 * (hi**2 - lo**2)

    @cached_property
    def z_weights(self) -> np.ndarray:
        """Length of each z cell, counting its mirror image below the plane."""
        lo, hi = self.z_edges
        return 2.0 * (hi - lo)

    @cached_property
    def z_line_weights(self) -> np.ndarray:
        """Cell lengths along the mirror-extended line ``z = -zmax..zmax``."""
        half = 0.5 * self.z_weights
        return np.concatenate([half[:0:-1], [self.z_weights[0]], half[1:]])

    @cached_property
    def cell_volume(self) -> np.ndarray:
        return 2.0 * np.pi * np.outer(self.r_weights, self.z_weights)

    def integrate(self, values) -> float:
        """Volume integral over all of space of a z-even nodal field."""
        return float(np.sum(np.asarray(values) * self.cell_volume))


@dataclass(frozen=True)
class DensityField:
    grid: AxisymGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != self.grid.shape:
            raise InvalidParams(f"values shape {v.shape} != grid shape {self.grid.shape}")
        if np.any(v < 0) or not np.all(np.isfinite(v)):
            raise InvalidParams("density must be finite and nonnegative")
        object.__setattr__(self, "values", v)

    @property
    def mass(self) -> float:
        return self.grid.integrate(self.values)

    @classmethod
    def from_radial(cls, grid: AxisymGrid, profile) -> "DensityField":
        """Sample a radial profile (anything with ``density(x)``) on the grid."""
        R, Z = grid.mesh()
        return cls(grid, profile.density(np.hypot(R, Z)))


@dataclass(frozen=True)
class PotentialField:
    grid: AxisymGrid
    values: np.ndarray


def spheroid_density(grid: AxisymGrid, a: float, c: float, rho0: float = 1.0) -> DensityField:
    """Uniform spheroid ``r^2/a^2 + z^2/c^2 <= 1`` as exact cell volume fractions."""
    r0, r1 = grid.r_edges
    z0, z1 = grid.z_edges
    A, B = (r0**2)[:, None], (r1**2)[:, None]
    z0, z1 = z0[None, :], z1[None, :]
    alpha, beta = a * a, (a / c) ** 2

    def crossing(level):
        return np.sqrt(np.clip((alpha - level) / beta, 0.0, None))

    def overlap(lo, hi):
        return np.clip(np.minimum(z1, hi) - np.maximum(z0, lo), 0.0, None)

    def poly(lo, hi):
        lo, hi = np.maximum(z0, lo), np.minimum(z1, hi)
        hi = np.maximum(hi, lo)
        return alpha * (hi - lo) - beta * (hi**3 - lo**3) / 3.0

    zB, zA = crossing(B), crossing(A)
    clipped = B * overlap(0.0, zB) + poly(zB, zA) + A * overlap(zA, np.inf)
    inside = 0.5 * (clipped - A * (z1 - z0))
    full = 0.5 * (B - A) * (z1 - z0)
    return DensityField(grid, rho0 * inside / full)


# -- elliptic integral ---------------------------------------------------------


def _ellipk_complement(kp):
    """K from the complementary modulus ``k' = sqrt(1 - k^2)`` via the AGM."""
    kp = np.asarray(kp, dtype=float)
    a = np.ones_like(kp)
    b = np.where(kp > 0, kp, 1.0)
    for _ in range(40):
        if np.all(np.abs(a - b) <= 1e-15 * a):
            break
        a, b = 0.5 * (a + b), np.sqrt(a * b)
    return np.where(kp > 0, 0.5 * np.pi / a, np.inf)


def elliptic_K(k: float) -> float:
    """Complete elliptic integral of the first kind, modulus convention.

    ``K(k) = int_0^{pi/2} dtheta / sqrt(1 - k^2 sin^2 theta)`` for
    ``0 <= k < 1``, computed with the arithmetic-geometric mean.
    """
    if not 0.0 <= k < 1.0:
        raise InvalidParams(f"elliptic_K needs 0 <= k < 1, got {k}")
    return float(_ellipk_complement(np.sqrt((1.0 - k) * (1.0 + k))))


def ring_kernel(r, rp, dz):
    """Azimuthal integral of ``1/|x - x'|`` between rings ``(r, z)`` and ``(r', z')``."""
    r, rp, dz = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (r, rp, dz)))
    far = (r + rp) ** 2 + dz**2
    near = (r - rp) ** 2 + dz**2
    with np.errstate(divide="ignore", invalid="ignore"):
        kp = np.sqrt(near / far)
        return 4.0 * _ellipk_complement(kp) / np.sqrt(far)


def _needs_subcells(rt, rs, dzs, dr, dz):
    far = (rt + rs) ** 2 + dzs**2
    k2 = np.divide(4.0 * rt * rs, far, out=np.ones_like(far), where=far > 0)
    adjacent = (np.abs(rt - rs) <= 1.01 * dr) & (np.abs(dzs) <= 1.01 * dz)
    return (k2 > K_SINGULAR**2) | adjacent


def _subcell_average(rt, rlo, rhi, dzc, dz):
    """Mean of ``G * r'`` over source cells, divided by the cell's ``int r' dr'``.

    Cell ``n`` spans ``[rlo[n], rhi[n]]`` radially and ``dzc[n] +- dz/2``
    in z-offset from the target at radius ``rt[n]``. 4x4 Gauss-Legendre.
    """
    rmid, rhalf = 0.5 * (rlo + rhi), 0.5 * (rhi - rlo)
    rq = rmid[:, None] + rhalf[:, None] * _GAUSS_X[None, :]
    wr = rhalf[:, None] * _GAUSS_W[None, :] * rq
    zq = dzc[:, None] + 0.5 * dz * _GAUSS_X[None, :]
    wz = 0.5 * dz * _GAUSS_W
    g = ring_kernel(rt[:, None, None], rq[:, :, None], zq[:, None, :])
    total = np.einsum("nab,na,b->n", g, wr, wz)
    return total / (0.5 * (rhi**2 - rlo**2) * dz)


class KernelTable:
    """Cell-integrated ring kernel for one grid.

    ``table[i, j, m]`` is the potential at node ``(r_i, 0)`` produced by unit
    density on the source cell of ``r_j`` whose centre sits ``m*dz`` away in
    z, per unit z-length; ``m = 0..2*nz`` covers every node pair of the
    mirror-extended grid. Near-singular entries are cell averages from
    sub-cell quadrature, symmetrised in ``i <-> j`` so that the discrete
    operator is self-adjoint in the grid's volume inner product.
    """

    def __init__(self, grid: AxisymGrid):
        self.grid = grid
        nm = 2 * grid.nz + 1
        r = grid.r
        dm = np.arange(nm) * grid.dz
        avg = ring_kernel(r[:, None, None], r[None, :, None], dm[None, None, :])
        flag = _needs_subcells(
            r[:, None, None], r[None, :, None], dm[None, None, :], grid.dr, grid.dz
        )
        ii, jj, mm = np.nonzero(flag)
        lo, hi = grid.r_edges
        avg[ii, jj, mm] = _subcell_average(r[ii], lo[jj], hi[jj], dm[mm], grid.dz)
        avg = 0.5 * (avg + avg.transpose(1, 0, 2))
        self.table = avg * grid.r_weights[None, :, None]
        self.n_singular = ii.size

        nz = grid.nz
        self.nfft = sfft.next_fast_len(4 * nz + 1, real=True)
        taps = np.abs(np.arange(4 * nz + 1) - 2 * nz)
        spectrum = sfft.rfft(self.table[:, :, taps], n=self.nfft, axis=-1)
        # (freq, target, source) for a batched matmul
        self._spectrum = np.ascontiguousarray(spectrum.transpose(2, 0, 1))

    def _source_lines(self, values):
        """Mirror-extend ``values`` in z and fold in the z quadrature weights."""
        ext = np.concatenate([values[:, :0:-1], values], axis=1)
        return ext * self.grid.z_line_weights[None, :]

    def apply(self, values) -> np.ndarray:
        nz = self.grid.nz
        lines = self._source_lines(values)
        src = sfft.rfft(lines, n=self.nfft, axis=-1).T[:, :, None]
        out = np.matmul(self._spectrum, src)[:, :, 0].T
        full = sfft.irfft(out, n=self.nfft, axis=-1)
        return full[:, 3 * nz : 4 * nz + 1]

    def apply_at_node(self, values, i: int, k: int) -> float:
        """Direct sum for one target node, same table as ``apply``."""
        nz = self.grid.nz
        lines = self._source_lines(values)
        taps = np.abs(k - (np.arange(2 * nz + 1) - nz))
        return float(np.sum(self.table[i][:, taps] * lines))


@lru_cache(maxsize=4)
def kernel_table(grid: AxisymGrid) -> KernelTable:
    """Kernel table for ``grid``, built once and shared."""
    return KernelTable(grid)


def potential(rho: DensityField) -> PotentialField:
    """Potential of ``rho`` at every grid node, mirror sources included."""
    table = kernel_table(rho.grid)
    return PotentialField(rho.grid, table.apply(rho.values))


def potential_at(rho: DensityField, r: float, z: float) -> float:
    """Potential at an arbitrary point ``(r, z)``.

    Grid nodes reuse the tabulated kernel, so the value matches
    ``potential`` there; other points sum freshly evaluated cell averages.
    """
    g = rho.grid
    r, z = float(r), abs(float(z))
    fi, fk = r / g.dr, z / g.dz
    i, k = int(round(fi)), int(round(fk))
    if abs(fi - i) < 1e-9 and abs(fk - k) < 1e-9 and i <= g.nr and k <= g.nz:
        return kernel_table(g).apply_at_node(rho.values, i, k)

    zs = np.concatenate([-g.z[:0:-1], g.z])
    ext = np.concatenate([rho.values[:, :0:-1], rho.values], axis=1)
    wz = g.z_line_weights
    rs = g.r[:, None] * np.ones_like(zs)[None, :]
    dzs = np.broadcast_to(z - zs[None, :], rs.shape)
    rt = np.full(rs.shape, r)
    avg = ring_kernel(rt, rs, dzs)
    flag = _needs_subcells(rt, rs, dzs, g.dr, g.dz) & (ext > 0)
    jj, pp = np.nonzero(flag)
    if jj.size:
        lo, hi = g.r_edges
        avg[jj, pp] = _subcell_average(rt[jj, pp], lo[jj], hi[jj], dzs[jj, pp], g.dz)
    mask = ext > 0
    w = g.r_weights[:, None] * wz[None, :]
    return float(np.sum(avg[mask] * ext[mask] * w[mask]))


def weighted_norm(field, s: float, grid: AxisymGrid | None = None) -> float:
    """``max over nodes of (1 + r^2 + z^2)**(s/2) * |f|``.

    ``field`` is a DensityField/PotentialField or a bare array with ``grid``.
    """
    if s < 0:
        raise InvalidParams("weight exponent s must be nonnegative")
    if grid is None:
        grid, values = field.grid, field.values
    else:
        values = field
    R, Z = grid.mesh()
    weight = (1.0 + R**2 + Z**2) ** (0.5 * s)
    return float(np.max(weight * np.abs(values)))


# -- grid dump -----------------------------------------------------------------


def write_grid_dump(path, rho: DensityField, U: PotentialField) -> None:
    """Text dump: ``# nr nz dr dz`` header, then ``r z rho U`` rows, z-major."""
    g = rho.grid
    lines = [f"# {g.nr} {g.nz} {g.dr:.17g} {g.dz:.17g}"]
    for k in range(g.nz + 1):
        for i in range(g.nr + 1):
            lines.append(
                f"{g.r[i]:.17g} {g.z[k]:.17g} {rho.values[i, k]:.17g} {U.values[i, k]:.17g}"
            )
    Path(path).write_text("\n".join(lines) + "\n")


def read_grid_dump(path) -> tuple[DensityField, PotentialField]:
    with open(path) as fh:
        header = fh.readline().lstrip("#").split()
    nr, nz = int(header[0]), int(header[1])
    dr, dz = float(header[2]), float(header[3])
    grid = AxisymGrid(nr, nz, nr * dr, nz * dz)
    data = np.loadtxt(path, comments="#", ndmin=2)
    rho = data[:, 2].reshape(nz + 1, nr + 1).T
    U = data[:, 3].reshape(nz + 1, nr + 1).T
    return DensityField(grid, rho), PotentialField(grid, U)

"""Green functions, Robin data and the disk Bergman kernel on canonical domains.

All Green functions carry the physics normalization: -Laplace G = delta_a
with G = (1/2pi)(-log|z-a| + H(z,a)), so the harmonic-measure density
-dG/dn has unit total mass.  Robin data (h0, h1) follows the expansion
H(z,a) = h0(a) + Re(h1(a)(z-a)) + O((z-a)^2) with h1 = dh0/da.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from . import numkit
from .errors import ConditioningError, DomainError, ParameterError, PoleError

__all__ = [
    "DomainDescriptor",
    "GreenExpansion",
    "RectangleGreenGrid",
    "green",
    "robin_data",
    "h1_contour",
    "poisson_value",
    "conformal_transport",
    "curvature_of_metric",
    "bergman_disk",
    "szego_disk",
    "fd_dirichlet_green",
    "rectangle_green_series",
]


@dataclass(frozen=True)
class DomainDescriptor:
    """Canonical planar domain.

    kinds: disk(R), half_plane (Im z > 0), slit_plane (complement of the
    ray [0, inf)), rectangle(w, h, grid) = (0,w) x (0,h), and
    periodic_strip(tau) = {-1/2 < Re z < 0} with Im z mod Im tau.
    """

    kind: str
    R: float = 1.0
    w: float = 1.0
    h: float = 1.0
    grid: int = 128
    tau: complex = 2j

    @staticmethod
    def disk(R: float = 1.0) -> "DomainDescriptor":
        if R <= 0:
            raise ParameterError("disk radius must be positive")
        return DomainDescriptor("disk", R=R)

    @staticmethod
    def half_plane() -> "DomainDescriptor":
        return DomainDescriptor("half_plane")

    @staticmethod
    def slit_plane() -> "DomainDescriptor":
        return DomainDescriptor("slit_plane")

    @staticmethod
    def rectangle(w: float, h: float, grid: int = 128) -> "DomainDescriptor":
        if w <= 0 or h <= 0:
            raise ParameterError("rectangle sides must be positive")
        if grid > 512:
            raise ParameterError("grids are capped at 512^2")
        return DomainDescriptor("rectangle", w=w, h=h, grid=grid)

    @staticmethod
    def periodic_strip(tau: complex) -> "DomainDescriptor":
        tau = complex(tau)
        if abs(tau.real) > 1e-14 or tau.imag <= 0:
            raise ParameterError("periodic strip needs purely imaginary tau, Im tau > 0")
        return DomainDescriptor("periodic_strip", tau=tau)

    def contains(self, z: complex) -> bool:
        z = complex(z)
        if self.kind == "disk":
            return abs(z) < self.R
        if self.kind == "half_plane":
            return z.imag > 0
        if self.kind == "slit_plane":
            return not (z.imag == 0 and z.real >= 0)
        if self.kind == "rectangle":
            return 0 < z.real < self.w and 0 < z.imag < self.h
        if self.kind == "periodic_strip":
            return -0.5 < z.real < 0.0
        raise ParameterError(f"unknown kind {self.kind!r}")

    def boundary_distance(self, z: complex) -> float:
        z = complex(z)
        if self.kind == "disk":
            return self.R - abs(z)
        if self.kind == "half_plane":
            return z.imag
        if self.kind == "slit_plane":
            return abs(z) if z.real <= 0 else abs(z.imag)
        if self.kind == "rectangle":
            return min(z.real, self.w - z.real, z.imag, self.h - z.imag)
        if self.kind == "periodic_strip":
            return min(-z.real, z.real + 0.5)
        raise ParameterError(f"unknown kind {self.kind!r}")

    def boundary_curve(self, truncation: float = 40.0) -> numkit.Curve:
        if self.kind == "disk":
            return numkit.circle(0j, self.R)
        if self.kind == "half_plane":
            # truncated real axis, positive orientation (domain on the left)
            return numkit.line_segment(-truncation, truncation, sample_count=512)
        raise ParameterError(f"no boundary curve for kind {self.kind!r}")

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_dict(self) -> dict:
        if self.kind == "disk":
            return {"kind": "disk", "R": self.R}
        if self.kind in ("half_plane", "slit_plane"):
            return {"kind": self.kind}
        if self.kind == "rectangle":
            return {"kind": "rectangle", "w": self.w, "h": self.h, "grid": self.grid}
        if self.kind == "periodic_strip":
            return {"kind": "periodic_strip", "tau": [self.tau.real, self.tau.imag]}
        raise ParameterError(f"unknown kind {self.kind!r}")

    @staticmethod
    def from_dict(data: dict) -> "DomainDescriptor":
        kind = data.get("kind")
        if kind == "disk":
            return DomainDescriptor.disk(float(data["R"]))
        if kind == "half_plane":
            return DomainDescriptor.half_plane()
        if kind == "slit_plane":
            return DomainDescriptor.slit_plane()
        if kind == "rectangle":
            return DomainDescriptor.rectangle(float(data["w"]), float(data["h"]),
                                              int(data.get("grid", 128)))
        if kind == "periodic_strip":
            t = data["tau"]
            return DomainDescriptor.periodic_strip(complex(t[0], t[1]))
        raise ParameterError(f"unknown domain kind {kind!r}")


@dataclass(frozen=True)
class GreenExpansion:
    """Robin data at a point: h0, h1 = dh0/da, and the metric curvature."""

    h0: float
    h1: complex
    curvature: float = -4.0


def _slit_root(z: complex) -> complex:
    """sqrt with branch cut along [0, inf): the root with positive Im."""
    s = cmath.sqrt(z)
    return s if s.imag > 0 else -s


def _require_interior(domain: DomainDescriptor, *points: complex) -> None:
    for p in points:
        if not domain.contains(p):
            raise DomainError(f"{p} is not interior to {domain.kind}")


def green(domain: DomainDescriptor, z: complex, a: complex) -> float:
    """Dirichlet Green function of the domain, positive inside, 0 on the boundary."""
    z, a = complex(z), complex(a)
    _require_interior(domain, z, a)
    if abs(z - a) < 1e-14:
        raise PoleError("Green function pole at z = a")
    if domain.kind == "disk":
        R = domain.R
        return -math.log(abs(R * (z - a) / (R * R - z * a.conjugate()))) / (2 * math.pi)
    if domain.kind == "half_plane":
        return -math.log(abs((z - a) / (z - a.conjugate()))) / (2 * math.pi)
    if domain.kind == "slit_plane":
        w, wa = _slit_root(z), _slit_root(a)
        return -math.log(abs((w - wa) / (w - wa.conjugate()))) / (2 * math.pi)
    if domain.kind == "rectangle":
        return fd_dirichlet_green(domain, a).value(z)
    if domain.kind == "periodic_strip":
        from . import schottky
        return schottky.g_electro_strip(z, a, schottky.StripDouble(domain.tau))
    raise ParameterError(f"unknown kind {domain.kind!r}")


def green_z_derivative(domain: DomainDescriptor, z: complex, a: complex) -> complex:
    """dG/dz for the closed-form kinds (used by contour formulas)."""
    z, a = complex(z), complex(a)
    if domain.kind == "disk":
        R = domain.R
        return -(R * R - abs(a) ** 2) / (4 * math.pi * (z - a) * (R * R - z * a.conjugate()))
    if domain.kind == "half_plane":
        return -(1.0 / (z - a) - 1.0 / (z - a.conjugate())) / (4 * math.pi)
    if domain.kind == "slit_plane":
        w, wa = _slit_root(z), _slit_root(a)
        dwdz = 1.0 / (2 * w)
        return -(1.0 / (w - wa) - 1.0 / (w - wa.conjugate())) * dwdz / (4 * math.pi)
    raise ParameterError(f"no closed-form derivative for kind {domain.kind!r}")


def robin_data(domain: DomainDescriptor, a: complex,
               _rect_offset: int = 4) -> GreenExpansion:
    """Robin function h0(a), coefficient h1(a) = dh0/da, and curvature.

    Closed forms for disk / half-plane / slit plane (curvature -4, the
    Liouville case); the rectangle goes through the finite-difference
    oracle with Richardson extrapolation over two grids.
    """
    a = complex(a)
    _require_interior(domain, a)
    if domain.boundary_distance(a) < 1e-9:
        raise ConditioningError("point too close to the boundary for Robin data")
    if domain.kind == "disk":
        R = domain.R
        h0 = math.log((R * R - abs(a) ** 2) / R)
        h1 = -a.conjugate() / (R * R - abs(a) ** 2)
        return GreenExpansion(h0, h1, -4.0)
    if domain.kind == "half_plane":
        y = a.imag
        return GreenExpansion(math.log(2 * y), -0.5j / y, -4.0)
    if domain.kind == "slit_plane":
        w = _slit_root(a)
        h0 = math.log(4 * abs(w) * w.imag)
        h1 = 1.0 / (4 * a) + 1.0 / (4j * w * w.imag)
        return GreenExpansion(h0, h1, -4.0)
    if domain.kind == "rectangle":
        return _rectangle_robin(domain, a, _rect_offset)
    if domain.kind == "periodic_strip":
        from . import schottky
        dbl = schottky.StripDouble(domain.tau)
        h0 = schottky.gamma_electro(a, dbl)
        h1 = schottky.gamma_electro_gradient(a, dbl)
        kappa = -4 * math.pi * schottky.strip_bergman_kernels(a, a, dbl)[0].real \
            * math.exp(2 * h0)
        return GreenExpansion(h0, h1, kappa)
    raise ParameterError(f"unknown kind {domain.kind!r}")


def h1_contour(domain: DomainDescriptor, a: complex, n: int = 256) -> complex:
    """h1 from the contour formula 4*pi*i * oint (dG/dz)^2 dz.

    For the half-plane the contour is a truncated segment of the real
    axis; the truncation tail decays like the cube of the cutoff.
    """
    a = complex(a)
    _require_interior(domain, a)
    curve = domain.boundary_curve()
    val = numkit.contour_integral(lambda z: green_z_derivative(domain, z, a) ** 2,
                                  curve, n=n)
    return 4j * math.pi * val


def poisson_value(boundary_data: Callable[[complex], float], a: complex,
                  R: float = 1.0, n: int = 256) -> float:
    """Harmonic extension at a from boundary values on |z| = R (trapezoid rule)."""
    a = complex(a)
    r = abs(a)
    if r >= R:
        raise DomainError("evaluation point must satisfy |a| < R")
    phi = cmath.phase(a) if r > 0 else 0.0
    theta = 2 * math.pi * np.arange(n) / n
    kernel = (R * R - r * r) / (R * R - 2 * R * r * np.cos(theta - phi) + r * r)
    u = np.array([boundary_data(R * complex(math.cos(t), math.sin(t))) for t in theta])
    return float(np.sum(u * kernel) / n)


def conformal_transport(src: GreenExpansion, fprime: complex,
                        fsecond: complex) -> GreenExpansion:
    """Push Robin data through a conformal map with derivatives at the point.

    h0 gains log|f'|; h1 transforms as an affine connection,
    h1_new * f' = h1_old + f''/(2 f'); the curvature is unchanged.
    """
    if fprime == 0:
        raise ParameterError("singular map: f'(a) = 0")
    h0 = src.h0 + math.log(abs(fprime))
    h1 = (src.h1 + fsecond / (2 * fprime)) / fprime
    return GreenExpansion(h0, h1, src.curvature)


def curvature_of_metric(gamma: Callable[[complex], float], z: complex,
                        h: float = 1e-4) -> float:
    """Gaussian curvature of ds = exp(-gamma)|dz|: kappa = exp(2 gamma) Lap gamma."""
    lap = numkit.laplacian_at(gamma, complex(z), h)
    return math.exp(2 * gamma(complex(z))) * lap


def bergman_disk(z: complex, a: complex) -> complex:
    """Bergman kernel of the unit disk, K(z,a) = 1/(pi (1 - z conj(a))^2)."""
    z, a = complex(z), complex(a)
    return 1.0 / (math.pi * (1 - z * a.conjugate()) ** 2)


def szego_disk(z: complex, a: complex) -> complex:
    """Szego kernel of the unit disk, 1/(2 pi (1 - z conj(a)))."""
    return 1.0 / (2 * math.pi * (1 - complex(z) * complex(a).conjugate()))


# ---------------------------------------------------------------------------
# rectangle: finite-difference oracle
# ---------------------------------------------------------------------------

class RectangleGreenGrid:
    """Gridded Dirichlet Green function on a rectangle for one source node."""

    def __init__(self, domain: DomainDescriptor, a: complex, values: np.ndarray):
        self.domain = domain
        self.a = a
        self.values = values                     # (nx+1, ny+1) including boundary
        self.hx = domain.w / (values.shape[0] - 1)
        self.hy = domain.h / (values.shape[1] - 1)

    def value(self, z: complex) -> float:
        """Bilinear interpolation; exact at grid nodes."""
        x, y = complex(z).real, complex(z).imag
        i = min(int(x / self.hx), self.values.shape[0] - 2)
        j = min(int(y / self.hy), self.values.shape[1] - 2)
        tx = x / self.hx - i
        ty = y / self.hy - j
        v = self.values
        return float((1 - tx) * (1 - ty) * v[i, j] + tx * (1 - ty) * v[i + 1, j]
                     + (1 - tx) * ty * v[i, j + 1] + tx * ty * v[i + 1, j + 1])


class RectangleGreenSolver:
    """Factorized 5-point Laplacian on a rectangle grid, reused across sources."""

    def __init__(self, domain: DomainDescriptor, grid: int | None = None):
        if domain.kind != "rectangle":
            raise ParameterError("solver requires a rectangle domain")
        n = grid if grid is not None else domain.grid
        if n > 512:
            raise ParameterError("grids are capped at 512^2")
        self.domain = domain
        self.nx = n
        self.hx = domain.w / n
        self.ny = max(2, int(round(domain.h / self.hx)))
        self.hy = domain.h / self.ny
        if self.hx > min(domain.w, domain.h) / 32:
            raise ParameterError("grid spacing must be at most min(w,h)/32")
        ix = self.nx - 1
        iy = self.ny - 1
        dx = sp.diags([1, -2, 1], [-1, 0, 1], shape=(ix, ix)) / self.hx ** 2
        dy = sp.diags([1, -2, 1], [-1, 0, 1], shape=(iy, iy)) / self.hy ** 2
        lap = sp.kron(dx, sp.identity(iy)) + sp.kron(sp.identity(ix), dy)
        try:
            self._lu = spla.splu((-lap).tocsc())
        except RuntimeError as exc:  # degenerate grid
            raise ParameterError(f"singular linear system: {exc}") from exc

    def node_index(self, a: complex) -> tuple[int, int]:
        i = round(complex(a).real / self.hx)
        j = round(complex(a).imag / self.hy)
        if not (0 < i < self.nx and 0 < j < self.ny):
            raise DomainError("source must be an interior grid node")
        if (abs(i * self.hx - complex(a).real) > 1e-9 * self.hx
                or abs(j * self.hy - complex(a).imag) > 1e-9 * self.hy):
            raise DomainError(f"source {a} is not a grid node")
        return i, j

    def solve(self, a: complex) -> RectangleGreenGrid:
        i, j = self.node_index(a)
        iy = self.ny - 1
        rhs = np.zeros((self.nx - 1) * iy)
        rhs[(i - 1) * iy + (j - 1)] = 1.0 / (self.hx * self.hy)
        sol = self._lu.solve(rhs)
        full = np.zeros((self.nx + 1, self.ny + 1))
        full[1:-1, 1:-1] = sol.reshape(self.nx - 1, iy)
        return RectangleGreenGrid(self.domain, complex(a), full)


def fd_dirichlet_green(domain: DomainDescriptor, a: complex,
                       grid: int | None = None) -> RectangleGreenGrid:
    """Numeric Dirichlet Green function on a rectangle (unit point source,
    zero boundary); second-order convergent in the grid spacing."""
    return RectangleGreenSolver(domain, grid).solve(a)


def rectangle_green_series(domain: DomainDescriptor, z: complex, a: complex,
                           terms: int = 400) -> float:
    """Eigenfunction-series oracle for the rectangle Green function.

    Sine expansion along the axis with the larger source/target separation,
    with 1D two-point kernels in the transverse direction; geometric
    convergence whenever the separation along the chosen axis is positive.
    """
    z, a = complex(z), complex(a)
    w, h = domain.w, domain.h
    if abs(z.real - a.real) >= abs(z.imag - a.imag):
        # expand in sin(n pi y / h), propagate in x
        u1, u2, span = z.imag, a.imag, h
        x1, x2, width = z.real, a.real, w
    else:
        u1, u2, span = z.real, a.real, w
        x1, x2, width = z.imag, a.imag, h
    lo, hi = min(x1, x2), max(x1, x2)
    total = 0.0
    for nmode in range(1, terms + 1):
        k = nmode * math.pi / span
        # 1D Green of -d^2/dx^2 + k^2 with Dirichlet ends, written in
        # decaying exponentials so large k stays finite
        denom = -math.expm1(-2 * k * width)
        g = (math.exp(-k * (hi - lo)) - math.exp(-k * (hi + lo))
             - math.exp(-k * (2 * width - hi - lo))
             + math.exp(-k * (2 * width - hi + lo))) / (2 * k * denom)
        term = (2.0 / span) * math.sin(nmode * math.pi * u1 / span) \
            * math.sin(nmode * math.pi * u2 / span) * g
        total += term
        # the sine factors vanish at symmetric nodes, so gate the exit on
        # the mode envelope rather than on a single term
        if (2.0 / span) * abs(g) < 1e-17 and nmode > 8:
            break
    return total


def _rectangle_h0_single(solver: RectangleGreenSolver, a: complex,
                         offset_nodes: int) -> float:
    """h0 estimate on one grid: 2*pi*G + log|z-a| averaged over the symmetric
    4-point stencil at a fixed node offset (odd/even expansion terms cancel)."""
    i = round(complex(a).real / solver.hx)
    j = round(complex(a).imag / solver.hy)
    src = complex(i * solver.hx, j * solver.hy)
    g = solver.solve(src)
    d = offset_nodes * solver.hx
    vals = [2 * math.pi * g.value(src + dz) + math.log(abs(dz))
            for dz in (d, -d, 1j * d, -1j * d)]
    return float(np.mean(vals))


def _rectangle_robin(domain: DomainDescriptor, a: complex, offset: int) -> GreenExpansion:
    """h0 on a rectangle via the fd oracle plus Richardson extrapolation.

    The stencil offset is held at the same physical size on both grids so
    the extrapolation removes the O(h^2) solve error.
    """
    n1 = domain.grid
    coarse = RectangleGreenSolver(domain, n1)
    fine = RectangleGreenSolver(domain, 2 * n1)
    h0 = (4 * _rectangle_h0_single(fine, a, 2 * offset)
          - _rectangle_h0_single(coarse, a, offset)) / 3
    # h1 by central differences of the fine-grid h0 over a grid-aligned step
    step = 4 * fine.hx
    def h0_at(p: complex) -> float:
        return _rectangle_h0_single(fine, p, 2 * offset)
    dx = (h0_at(a + step) - h0_at(a - step)) / (2 * step)
    dy = (h0_at(a + 1j * step) - h0_at(a - 1j * step)) / (2 * step)
    return GreenExpansion(h0, 0.5 * (dx - 1j * dy), -4.0)

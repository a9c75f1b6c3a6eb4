"""Point-vortex forces, energies and dynamics in the plane and the disk.

A bound vortex of strength G with local stream expansion coefficient h1
feels the force F = -(G^2/2pi) conj(h1); a free vortex moves with
da/dt = (G/2pi i) conj(h1).  For several vortices, h1 at vortex k collects
the domain Robin term plus the regular influence of the other vortices
(the Kirchhoff-Routh assembly); the conserved Hamiltonian is

    W = sum_{j<k} G_j G_k G(z_j, z_k) + sum_k (G_k^2 / 4pi) h0(z_k),

which in the free plane reduces to the pairwise logarithmic energy.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import numkit, planar_green
from .errors import DomainError, ParameterError, SingularConfigurationError

__all__ = [
    "VortexSystem",
    "pair_force",
    "bound_vortex_force",
    "free_vortex_velocity",
    "forced_vortex_velocity",
    "stream_function",
    "hamiltonian",
    "simulate",
]

COLLISION_THRESHOLD = 1e-10


@dataclass
class VortexSystem:
    """Positions z_k and strengths Gamma_k in the plane or a disk."""

    positions: np.ndarray
    strengths: np.ndarray
    domain: planar_green.DomainDescriptor | None = None   # None = whole plane

    def __post_init__(self):
        self.positions = np.asarray(self.positions, dtype=complex)
        self.strengths = np.asarray(self.strengths, dtype=float)
        if len(self.positions) != len(self.strengths):
            raise ParameterError("positions and strengths must match")
        if self.domain is not None and self.domain.kind != "disk":
            raise ParameterError("vortex domains are the plane or a disk")
        n = len(self.positions)
        for i in range(n):
            for j in range(i + 1, n):
                if abs(self.positions[i] - self.positions[j]) < COLLISION_THRESHOLD:
                    raise SingularConfigurationError("coincident vortex positions")
        if self.domain is not None:
            for z in self.positions:
                if not self.domain.contains(z):
                    raise DomainError(f"vortex at {z} outside the disk")

    @property
    def n(self) -> int:
        return len(self.positions)

    def to_dict(self) -> dict:
        dom = {"kind": "plane"} if self.domain is None else self.domain.to_dict()
        return {"domain": dom,
                "vortices": [{"z": [z.real, z.imag], "gamma": g}
                             for z, g in zip(self.positions, self.strengths)]}

    @staticmethod
    def from_dict(data: dict) -> "VortexSystem":
        dom = data["domain"]
        domain = None if dom.get("kind") == "plane" \
            else planar_green.DomainDescriptor.from_dict(dom)
        zs = [complex(v["z"][0], v["z"][1]) for v in data["vortices"]]
        gs = [float(v["gamma"]) for v in data["vortices"]]
        return VortexSystem(np.array(zs), np.array(gs), domain)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def pair_force(a: complex, b: complex, gamma_a: float, gamma_b: float) -> complex:
    """Force on the vortex at a from the vortex at b.

    F_a = (G_a G_b / 2pi) (a-b)/|a-b|^2: equal vortices repel, opposite
    ones attract; the force on b is the negative.
    """
    a, b = complex(a), complex(b)
    if a == b:
        raise SingularConfigurationError("coincident vortices")
    return gamma_a * gamma_b / (2 * math.pi) * (a - b) / abs(a - b) ** 2


def bound_vortex_force(h1: complex, gamma: float) -> complex:
    """General force on a bound vortex: F = -(Gamma^2/2pi) conj(h1)."""
    return -(gamma * gamma) / (2 * math.pi) * complex(h1).conjugate()


def _h1_assembled(positions: np.ndarray, strengths: np.ndarray,
                  domain, k: int) -> complex:
    """Expansion coefficient h1 at vortex k (Kirchhoff-Routh assembly)."""
    a = positions[k]
    h1 = 0j
    if domain is None:
        for j in range(len(positions)):
            if j == k:
                continue
            h1 -= strengths[j] / strengths[k] / (a - positions[j])
    else:
        R = domain.R
        for j in range(len(positions)):
            if j == k:
                continue
            b = positions[j]
            # 2 d/dz of 2pi G_disk(z, b) = -1/(z-b) - conj(b)/(R^2 - z conj(b))
            h1 += strengths[j] / strengths[k] * (
                -1.0 / (a - b) - b.conjugate() / (R * R - a * b.conjugate()))
        h1 += -a.conjugate() / (R * R - abs(a) ** 2)
    return h1


def free_vortex_velocity(system: VortexSystem, k: int) -> complex:
    """da_k/dt = (Gamma_k / 2pi i) conj(h1^(k)); zero for a lone plane vortex."""
    if not 0 <= k < system.n:
        raise ParameterError("vortex index out of range")
    h1 = _h1_assembled(system.positions, system.strengths, system.domain, k)
    return system.strengths[k] / (2j * math.pi) * h1.conjugate()


def forced_vortex_velocity(h1: complex, gamma: float, f_ext: complex) -> complex:
    """Velocity of a vortex subject to an external force:
    da/dt = (Gamma/2pi i) conj(h1) - i F_ext / Gamma."""
    if gamma == 0:
        raise ParameterError("vortex strength must be nonzero")
    return gamma / (2j * math.pi) * complex(h1).conjugate() - 1j * complex(f_ext) / gamma


def stream_function(system: VortexSystem, z: complex) -> float:
    """psi(z) = sum_k Gamma_k G(z, z_k) for the system's domain."""
    z = complex(z)
    total = 0.0
    for zk, gk in zip(system.positions, system.strengths):
        if abs(z - zk) < 1e-14:
            raise SingularConfigurationError("stream function evaluated at a vortex")
        if system.domain is None:
            total += gk * (-math.log(abs(z - zk)) / (2 * math.pi))
        else:
            total += gk * planar_green.green(system.domain, z, zk)
    return total


def hamiltonian(system: VortexSystem) -> float:
    """Kirchhoff-Routh energy (interaction Green terms plus Robin terms)."""
    z, g = system.positions, system.strengths
    total = 0.0
    for j in range(system.n):
        for k in range(j + 1, system.n):
            if system.domain is None:
                total += g[j] * g[k] * (-math.log(abs(z[j] - z[k])) / (2 * math.pi))
            else:
                total += g[j] * g[k] * planar_green.green(system.domain, z[j], z[k])
        if system.domain is not None:
            h0 = planar_green.robin_data(system.domain, z[j]).h0
            total += g[j] * g[j] / (4 * math.pi) * h0
    return total


def _velocities(positions: np.ndarray, strengths: np.ndarray, domain) -> np.ndarray:
    out = np.empty(len(positions), dtype=complex)
    for k in range(len(positions)):
        h1 = _h1_assembled(positions, strengths, domain, k)
        out[k] = strengths[k] / (2j * math.pi) * h1.conjugate()
    return out


def simulate(system: VortexSystem, t_end: float, tol: float = 1e-10,
             backward: bool = False) -> numkit.Trajectory:
    """Integrate the vortex motion; monitors energy and vorticity moments.

    Monitors: ``energy`` (Kirchhoff-Routh), and in the plane the moments
    ``moment`` = |sum G_k z_k| and ``angular`` = sum G_k |z_k|^2; in the
    disk ``radius_k`` for each vortex.  Aborts with CollisionError when two
    vortices (or a vortex and the wall) come within the threshold.
    """
    g = system.strengths * (-1.0 if backward else 1.0)
    domain = system.domain

    def field(y: np.ndarray) -> np.ndarray:
        return _velocities(y, g, domain)

    def separation(y: np.ndarray) -> float:
        sep = math.inf
        for i in range(len(y)):
            for j in range(i + 1, len(y)):
                sep = min(sep, abs(y[i] - y[j]))
            if domain is not None:
                sep = min(sep, domain.boundary_distance(y[i]))
        return sep

    monitors = {"energy": lambda y: hamiltonian(
        VortexSystem(y, g, domain))}
    if domain is None:
        monitors["moment"] = lambda y: abs(np.sum(g * y))
        monitors["angular"] = lambda y: float(np.sum(g * np.abs(y) ** 2))
    else:
        for k in range(system.n):
            monitors[f"radius_{k}"] = (lambda kk: lambda y: abs(y[kk]))(k)

    sep_guard = separation if system.n > 1 or domain is not None else None
    return numkit.rk_integrate(field, system.positions, t_end, tol,
                               monitors=monitors, separation=sep_guard,
                               collision_threshold=COLLISION_THRESHOLD)

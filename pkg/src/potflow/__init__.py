"""potflow: planar and Riemann-surface potential theory numerics.

Green/Robin functions on canonical domains, logarithmic capacity and
Fekete optimization, point-vortex dynamics, Hadamard boundary variation,
Weierstrass/theta evaluation, and the kernel identities of the periodic
strip and its torus double -- cross-verified against closed forms.
"""

from . import (  # noqa: F401
    elliptic,
    equilibrium,
    hadamard,
    numkit,
    planar_green,
    schottky,
    surface,
    vortex,
)

__version__ = "0.1.0"

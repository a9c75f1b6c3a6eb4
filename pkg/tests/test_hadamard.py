import math

import numpy as np
import pytest

from potflow import hadamard as hd, planar_green as pg
from potflow.errors import DomainError, PoleError

DISK = pg.DomainDescriptor.disk(1.0)


def test_dilation_delta_green():
    var = hd.BoundaryVariation(DISK, lambda t: 1.0, 1e-5)
    lhs, rhs = hd.hadamard_delta_green(var, 0.0, 0.5)
    assert abs(lhs - 1 / (2 * math.pi)) < 1e-6
    assert abs(rhs - 1 / (2 * math.pi)) < 1e-12
    assert abs(lhs - rhs) < 1e-6


def test_zero_variation():
    var = hd.BoundaryVariation(DISK, lambda t: 0.0, 1e-5)
    lhs, rhs = hd.hadamard_delta_green(var, 0.0, 0.5)
    assert lhs == 0.0 and rhs == 0.0


def test_translation_mode_matches():
    var = hd.BoundaryVariation(DISK, math.cos, 1e-4)
    lhs, rhs = hd.hadamard_delta_green(var, 0.0, 0.5, n=512)
    assert abs(lhs - rhs) < 1e-5
    # independent oracle: the translated disk has a closed-form Green function
    eps = 1e-4
    fd = (pg.green(DISK, -eps, 0.5 - eps) - pg.green(DISK, eps, 0.5 + eps)) / (2 * eps)
    assert abs(lhs - fd) < 1e-9


def test_delta_h0_dilation():
    var = hd.BoundaryVariation(DISK, lambda t: 1.0, 1e-5)
    lhs, rhs = hd.hadamard_delta_h0(var, 0.0)
    assert abs(lhs - 1.0) < 1e-7 and abs(rhs - 1.0) < 1e-12
    lhs5, rhs5 = hd.hadamard_delta_h0(var, 0.5)
    assert abs(rhs5 - 5 / 3) < 1e-12
    assert abs(lhs5 - 5 / 3) < 1e-7


def test_delta_h0_odd_mode_vanishes():
    # tangential/odd normal speed: the quadrature integrand is odd
    var = hd.BoundaryVariation(DISK, math.cos, 1e-5)
    _, rhs = hd.hadamard_delta_h0(var, 0.0)
    assert abs(rhs) < 1e-10


def test_first_order_slope():
    for mode in (lambda t: 1.0, math.cos, lambda t: math.cos(2 * t)):
        discrepancies = []
        for eps in (1e-3, 1e-4, 1e-5):
            var = hd.BoundaryVariation(DISK, mode, eps)
            lhs, rhs = hd.hadamard_delta_green(var, 0.2 + 0.1j, -0.3 + 0.25j,
                                               scheme="one_sided")
            discrepancies.append(abs(lhs - rhs) / abs(rhs))
        for hi, lo in zip(discrepancies[:-1], discrepancies[1:]):
            slope = math.log10(hi / lo)
            assert 0.8 <= slope <= 1.2


def test_triple_green_origin_value():
    val = hd.triple_green(0, 0, 0)
    assert abs(val + 1 / (4 * math.pi ** 2)) < 1e-14
    assert abs(abs(val) - 0.0253303) < 1e-7


def test_triple_green_full_symmetry():
    import itertools
    pts = (0.31, 0.12j, -0.25 + 0.2j)
    vals = [hd.triple_green(*perm, n=512) for perm in itertools.permutations(pts)]
    assert max(vals) - min(vals) < 1e-10


def test_triple_green_generates_hele_shaw():
    a, b, c = 0.3, 0.1j, -0.25 + 0.2j
    eps = 1e-4
    dens_c = lambda t: (1 - abs(c) ** 2) / (
        2 * math.pi * abs(np.exp(1j * t) - c) ** 2)
    var = hd.BoundaryVariation(DISK, dens_c, eps)     # delta_n = -dG/dn(.,c)
    lhs, _ = hd.hadamard_delta_green(var, a, b)
    assert abs(lhs + hd.triple_green(a, b, c)) < 1e-4


def test_variation_size_guard():
    with pytest.raises(DomainError):
        hd.BoundaryVariation(DISK, lambda t: 1.0, 0.2)


def test_interior_requirements():
    var = hd.BoundaryVariation(DISK, lambda t: 1.0, 1e-5)
    with pytest.raises(DomainError):
        hd.hadamard_delta_green(var, 1.5, 0.2)
    with pytest.raises(PoleError):
        hd.hadamard_delta_green(var, 0.2, 0.2)

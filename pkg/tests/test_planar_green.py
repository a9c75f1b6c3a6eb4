import cmath
import json
import math

import numpy as np
import pytest

from potflow import numkit, planar_green as pg
from potflow.errors import ConditioningError, DomainError, ParameterError, PoleError

DISK = pg.DomainDescriptor.disk(1.0)


def test_disk_green_value():
    assert abs(pg.green(DISK, 0.5, 0.0) - math.log(2) / (2 * math.pi)) < 1e-14


def test_disk_green_boundary_and_symmetry():
    rng = np.random.default_rng(2)
    for _ in range(200):
        th = rng.uniform(0, 2 * math.pi)
        z = 0.999999999 * cmath.exp(1j * th)
        assert pg.green(DISK, z, 0.3) < 1e-8
    assert pg.green(DISK, 0.3 + 0.1j, 0.5) == pg.green(DISK, 0.5, 0.3 + 0.1j)


def test_green_positive_interior():
    rng = np.random.default_rng(8)
    for dom in (DISK, pg.DomainDescriptor.half_plane(),
                pg.DomainDescriptor.slit_plane()):
        for _ in range(50):
            z = complex(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9))
            if dom.kind == "half_plane":
                z = complex(z.real, abs(z.imag) + 0.01)
            if not dom.contains(z) or abs(z - 0.3j - 0.2) < 1e-3:
                continue
            a = 0.2 + 0.3j if dom.contains(0.2 + 0.3j) else 0.2 + 0.5j
            assert pg.green(dom, z, a) > 0


def test_green_pole_and_domain_errors():
    with pytest.raises(PoleError):
        pg.green(DISK, 0.5, 0.5)
    with pytest.raises(DomainError):
        pg.green(DISK, 1.5, 0.0)


def test_robin_disk_values():
    rd0 = pg.robin_data(DISK, 0.0)
    assert rd0.h0 == 0.0 and rd0.h1 == 0.0
    rd = pg.robin_data(DISK, 0.5)
    assert abs(rd.h0 - math.log(0.75)) < 1e-14
    assert abs(rd.h1 - (-2.0 / 3.0)) < 1e-14


def test_robin_half_plane():
    rd = pg.robin_data(pg.DomainDescriptor.half_plane(), 1j)
    assert abs(rd.h0 - math.log(2)) < 1e-14
    assert abs(rd.h1 - (-0.5j)) < 1e-14


def test_robin_slit_plane_tip_axis():
    rd = pg.robin_data(pg.DomainDescriptor.slit_plane(), -0.7)
    assert abs(rd.h0 - math.log(4 * 0.7)) < 1e-12


def test_robin_h1_is_h0_gradient():
    # GreenExpansion invariant: h1 = dh0/da by finite differences
    h = 1e-5
    for dom, a in ((DISK, 0.3 + 0.2j),
                   (pg.DomainDescriptor.half_plane(), 0.4 + 0.8j),
                   (pg.DomainDescriptor.slit_plane(), 0.3 + 0.9j)):
        h0 = lambda p: pg.robin_data(dom, p).h0
        fd = 0.5 * ((h0(a + h) - h0(a - h)) / (2 * h)
                    - 1j * (h0(a + 1j * h) - h0(a - 1j * h)) / (2 * h))
        assert abs(pg.robin_data(dom, a).h1 - fd) < 1e-6


def test_robin_boundary_conditioning():
    with pytest.raises(ConditioningError):
        pg.robin_data(DISK, 1.0 - 1e-12)


def test_h1_contour_disk():
    assert abs(pg.h1_contour(DISK, 0.0, 128)) < 1e-12
    assert abs(pg.h1_contour(DISK, 0.5, 256) - (-2.0 / 3.0)) < 1e-10
    rng = np.random.default_rng(17)
    for _ in range(20):
        a = 0.85 * math.sqrt(rng.uniform()) * cmath.exp(2j * math.pi * rng.uniform())
        assert abs(pg.h1_contour(DISK, a, 512) - pg.robin_data(DISK, a).h1) < 1e-8


def test_h1_contour_half_plane_truncated():
    val = pg.h1_contour(pg.DomainDescriptor.half_plane(), 1j, 512)
    assert abs(val - (-0.5j)) < 1e-4


def test_poisson_values():
    assert abs(pg.poisson_value(lambda z: 1.0, 0.4 + 0.1j, 1.0, 128) - 1) < 1e-13
    assert abs(pg.poisson_value(lambda z: z.real, 0.3, 1.0, 128) - 0.3) < 1e-13
    val = pg.poisson_value(lambda z: (z * z).real, 0.3 + 0.2j, 1.0, 256)
    assert abs(val - 0.05) < 1e-13


def test_poisson_domain_error():
    with pytest.raises(DomainError):
        pg.poisson_value(lambda z: 1.0, 1.2, 1.0)


def test_conformal_transport_identity():
    src = pg.robin_data(DISK, 0.4)
    out = pg.conformal_transport(src, 1.0, 0.0)
    assert out == src


def test_conformal_transport_scaling():
    # f(z) = cz maps disk R=1 to disk R=|c|; h0 gains log|c|
    c = 2.5
    src = pg.robin_data(DISK, 0.3)
    out = pg.conformal_transport(src, c, 0.0)
    target = pg.robin_data(pg.DomainDescriptor.disk(c), c * 0.3)
    assert abs(out.h0 - target.h0) < 1e-14
    assert abs(out.h1 - target.h1) < 1e-14


def test_conformal_transport_automorphism():
    b = 0.3
    at = 0.2 + 0.4j
    fp = (1 - b * b) / (1 - b * at) ** 2
    fs = 2 * b * (1 - b * b) / (1 - b * at) ** 3
    out = pg.conformal_transport(pg.robin_data(DISK, at), fp, fs)
    target = pg.robin_data(DISK, (at - b) / (1 - b * at))
    assert abs(out.h1 - target.h1) < 1e-10
    assert abs(out.h0 - target.h0) < 1e-10
    assert out.curvature == target.curvature


def test_conformal_transport_singular_map():
    with pytest.raises(ParameterError):
        pg.conformal_transport(pg.robin_data(DISK, 0.0), 0.0, 1.0)


def test_curvature_liouville():
    kappa = pg.curvature_of_metric(
        lambda w: pg.robin_data(DISK, w).h0, 0.5, 1e-4)
    assert abs(kappa + 4.0) < 1e-5


def test_curvature_sphere_metric():
    gamma = lambda z: -0.5 * math.log(4 / (1 + abs(z) ** 2) ** 2)
    assert abs(pg.curvature_of_metric(gamma, 0.2, 1e-4) - 1.0) < 1e-6


def test_curvature_flat():
    assert abs(pg.curvature_of_metric(lambda z: 1.7, 0.3 + 0.1j)) < 1e-12


def test_bergman_disk_values():
    assert abs(pg.bergman_disk(0, 0) - 1 / math.pi) < 1e-15
    z, a = 0.3 + 0.2j, -0.1 + 0.4j
    assert abs(pg.bergman_disk(a, z) - pg.bergman_disk(z, a).conjugate()) < 1e-15


def test_bergman_reproduces_monomial():
    val = numkit.area_quadrature(
        lambda w: w * w * pg.bergman_disk(w, 0.4).conjugate(), DISK, 96)
    assert abs(val - 0.16) < 1e-10


def test_fd_green_matches_series_oracle():
    dom = pg.DomainDescriptor.rectangle(1.0, 1.0, 128)
    grid = pg.fd_dirichlet_green(dom, 0.5 + 0.5j)
    oracle = pg.rectangle_green_series(dom, 0.25 + 0.5j, 0.5 + 0.5j)
    assert abs(grid.value(0.25 + 0.5j) - oracle) < 2e-4


def test_fd_green_symmetry_and_boundary():
    dom = pg.DomainDescriptor.rectangle(1.0, 1.0, 64)
    solver = pg.RectangleGreenSolver(dom)
    a1, a2 = complex(0.5, 0.5), complex(0.25, 0.375)
    g1, g2 = solver.solve(a1), solver.solve(a2)
    assert abs(g1.value(a2) - g2.value(a1)) < 1e-8
    assert np.all(g1.values[0, :] == 0) and np.all(g1.values[-1, :] == 0)
    assert np.all(g1.values[:, 0] == 0) and np.all(g1.values[:, -1] == 0)


def test_fd_green_requires_grid_node():
    dom = pg.DomainDescriptor.rectangle(1.0, 1.0, 64)
    with pytest.raises(DomainError):
        pg.fd_dirichlet_green(dom, 0.5 + 0.5001j)


def test_rectangle_robin_center():
    # series-limit reference: h0(center of unit square) = -0.617386
    dom = pg.DomainDescriptor.rectangle(1.0, 1.0, 96)
    rd = pg.robin_data(dom, 0.5 + 0.5j)
    assert abs(rd.h0 - (-0.617386)) < 1e-3
    assert abs(rd.h1) < 1e-3  # symmetry


def test_robin_sandwich_bounds():
    rng = np.random.default_rng(44)
    for dom, factor in ((DISK, 2.0),
                        (pg.DomainDescriptor.half_plane(), 2.0),
                        (pg.DomainDescriptor.slit_plane(), 4.0)):
        for _ in range(50):
            if dom.kind == "disk":
                p = 0.95 * math.sqrt(rng.uniform()) \
                    * cmath.exp(2j * math.pi * rng.uniform())
            elif dom.kind == "half_plane":
                p = complex(rng.uniform(-3, 3), rng.uniform(0.05, 3))
            else:
                p = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
                if dom.boundary_distance(p) < 0.02:
                    continue
            h0 = pg.robin_data(dom, p).h0
            d = dom.boundary_distance(p)
            assert math.log(d) - 1e-9 <= h0 <= math.log(factor * d) + 1e-9


def test_monotonicity_under_inclusion():
    h_small = pg.robin_data(DISK, 0.4).h0
    h_big = pg.robin_data(pg.DomainDescriptor.disk(2.0), 0.4).h0
    assert h_small < h_big


def test_domain_descriptor_json_roundtrip():
    for dom in (DISK, pg.DomainDescriptor.half_plane(),
                pg.DomainDescriptor.slit_plane(),
                pg.DomainDescriptor.rectangle(2.0, 1.0, 64),
                pg.DomainDescriptor.periodic_strip(2j)):
        again = pg.DomainDescriptor.from_dict(json.loads(dom.to_json()))
        assert again == dom


def test_periodic_strip_delegates():
    dom = pg.DomainDescriptor.periodic_strip(2j)
    val = pg.green(dom, -0.2 + 0.3j, -0.25 + 0.5j)
    assert val > 0
    rd = pg.robin_data(dom, -0.25 + 0.5j)
    d = dom.boundary_distance(-0.25 + 0.5j)
    assert rd.h0 >= math.log(d) - 1e-9

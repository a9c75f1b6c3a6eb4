import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from potflow import numkit, planar_green
from potflow.errors import (
    CollisionError,
    EvaluationError,
    ParameterError,
)


def test_contour_residue_theorem():
    val = numkit.contour_integral(lambda z: 1 / z, numkit.circle(), n=64)
    assert abs(val - 2j * math.pi) < 1e-12


def test_contour_analytic_integrand_vanishes():
    val = numkit.contour_integral(lambda z: z, numkit.circle(), n=64)
    assert abs(val) < 1e-13


def test_contour_green_derivative_squared_matches_h1():
    # oint (dG/dz)^2 dz = h1/(4 pi i) with h1 = -2/3 at a = 0.5
    disk = planar_green.DomainDescriptor.disk(1.0)
    val = numkit.contour_integral(
        lambda z: planar_green.green_z_derivative(disk, z, 0.5) ** 2,
        numkit.circle(), n=256)
    expected = (-2.0 / 3.0) / (4j * math.pi)
    assert abs(val - expected) < 1e-12


def test_contour_requires_min_nodes():
    with pytest.raises(ParameterError):
        numkit.contour_integral(lambda z: z, numkit.circle(), n=8)


def test_contour_nonfinite_sample_names_node():
    node = np.exp(2j * np.pi * 0.25)  # hit exactly by the n = 64 grid

    def bad(z):
        return float("nan") if abs(z - node) < 1e-12 else 1.0

    with pytest.raises(EvaluationError) as err:
        numkit.contour_integral(bad, numkit.circle(), n=64)
    assert err.value.node is not None


def test_exact_differential_integrates_to_zero():
    # df for f = exp(z): integrand f'(gamma) gamma'
    val = numkit.contour_integral(lambda z: np.exp(z), numkit.circle(), n=64)
    assert abs(val) < 1e-10


def test_doubling_n_reduces_error_quadratically():
    # smooth but non-analytic integrand (C^2 kinks off the sample grid,
    # parity broken by the factor z); doubling n must reduce the error 4x
    f = lambda z: z * abs((z * np.exp(-0.37j)).imag) ** 3
    exact = numkit.contour_integral(f, numkit.circle(), n=8192)
    errs = [abs(numkit.contour_integral(f, numkit.circle(), n=n) - exact)
            for n in (16, 32, 64)]
    assert errs[1] < errs[0] / 4
    assert errs[2] < errs[1] / 4


def test_spectral_convergence_for_analytic():
    f = lambda z: 1 / (z - 1.5)
    exact = 0.0
    e1 = abs(numkit.contour_integral(f, numkit.circle(), n=32) - exact)
    e2 = abs(numkit.contour_integral(f, numkit.circle(), n=64) - exact)
    assert e2 < max(e1 / 100, 1e-15)


def test_wirtinger_conjugate():
    val = numkit.wirtinger_derivative(lambda z: z.conjugate(), 0.3 + 0.7j, "dzbar")
    assert abs(val - 1.0) < 1e-9


def test_wirtinger_modulus_squared_mixed():
    val = numkit.wirtinger_derivative(lambda z: abs(z) ** 2, 0.2 - 0.4j, "dzdzbar")
    assert abs(val - 1.0) < 1e-7


def test_wirtinger_two_point_mixed_on_disk_regular_part():
    # d^2 H /dz dabar at z = a = 0 equals -(pi/2) K(0,0) = -1/2
    def H(z, a):
        return math.log(abs(1 - z * a.conjugate())) \
            if (z or a) else 0.0

    val = numkit.mixed_second_derivative(H, 0j, 0j, 1e-4)
    assert abs(val - (-0.5)) < 1e-7


@settings(max_examples=25, deadline=None)
@given(st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False))
def test_wirtinger_holomorphic_dzbar_vanishes(z0):
    val = numkit.wirtinger_derivative(lambda z: z ** 3 + 2 * z, z0, "dzbar", 1e-4)
    assert abs(val) <= 1e-6


def test_wirtinger_step_validation():
    with pytest.raises(ParameterError):
        numkit.wirtinger_derivative(lambda z: z, 0j, "dz", 1.0)


def test_fd_laplacian_modulus_squared():
    f = lambda z: abs(z) ** 2
    z0, h = 0.4 + 0.2j, 1e-4
    samples = [f(z0), f(z0 + h), f(z0 - h), f(z0 + 1j * h), f(z0 - 1j * h)]
    assert abs(numkit.fd_laplacian(samples, h) - 4.0) < 1e-7


def test_fd_laplacian_harmonic():
    f = lambda z: math.log(abs(z))
    z0, h = 1.3 + 0.4j, 1e-4
    samples = [f(z0), f(z0 + h), f(z0 - h), f(z0 + 1j * h), f(z0 - 1j * h)]
    assert abs(numkit.fd_laplacian(samples, h)) < 1e-6


def test_fd_laplacian_disk_robin():
    disk = planar_green.DomainDescriptor.disk(1.0)
    lap = numkit.laplacian_at(
        lambda w: planar_green.robin_data(disk, w).h0, 0.5, 1e-4)
    assert abs(lap - (-4 / 0.75 ** 2)) < 1e-5
    assert abs(lap + 4 * math.pi * planar_green.bergman_disk(0.5, 0.5).real) < 1e-5


def test_area_quadrature_disk():
    disk = planar_green.DomainDescriptor.disk(1.0)
    assert abs(numkit.area_quadrature(lambda z: 1.0, disk, 48) - math.pi) < 1e-12
    val = numkit.area_quadrature(lambda z: abs(z) ** 2, disk, 48)
    assert abs(val - math.pi / 2) < 1e-12


def test_area_quadrature_reproducing_constant():
    disk = planar_green.DomainDescriptor.disk(1.0)
    val = numkit.area_quadrature(
        lambda z: planar_green.bergman_disk(z, 0j).conjugate(), disk, 48)
    assert abs(val - 1.0) < 1e-10


def test_area_quadrature_declared_singularity():
    # int_{|z|<1} log|z - a| dx dy = pi (|a|^2 - 1)/2 for |a| < 1
    disk = planar_green.DomainDescriptor.disk(1.0)
    a = 0.3
    val = numkit.area_quadrature(lambda z: math.log(abs(z - a)), disk, 96,
                                 singularities=[a])
    assert abs(val - math.pi * (a * a - 1) / 2) < 2e-4


def test_area_quadrature_error_estimate():
    disk = planar_green.DomainDescriptor.disk(1.0)
    val, err = numkit.area_quadrature(lambda z: abs(z) ** 4, disk, 48,
                                      with_error=True)
    assert abs(val - math.pi / 3) < 1e-12
    assert err >= 0


def test_area_quadrature_undeclared_nan_raises():
    disk = planar_green.DomainDescriptor.disk(1.0)
    with pytest.raises(EvaluationError):
        numkit.area_quadrature(lambda z: float("nan"), disk, 32)


def test_rk_circular_orbit():
    tol = 1e-10
    traj = numkit.rk_integrate(lambda y: 1j * y, [1.0 + 0j], 2 * math.pi, tol)
    assert abs(traj.final_state[0] - 1.0) < 10 * tol


def test_rk_linear_field_matches_exponential():
    tol = 1e-9
    traj = numkit.rk_integrate(lambda y: -0.7 * y, [2.0 + 1j], 3.0, tol)
    assert abs(traj.final_state[0] - (2.0 + 1j) * math.exp(-2.1)) < 10 * tol


def test_rk_tolerance_validation():
    with pytest.raises(ParameterError):
        numkit.rk_integrate(lambda y: y, [1.0 + 0j], 1.0, 1.0)


def test_rk_collision_guard_timestamps():
    # approach speed diverges like 1/separation, so the adaptive steps
    # shrink near contact and the endpoint guard fires
    def field(y):
        sep = abs(y[0] - y[1]) + 1e-30
        return np.array([1.0 / sep + 0j, -1.0 / sep + 0j])

    def separation(y):
        return abs(y[0] - y[1])

    with pytest.raises(CollisionError) as err:
        numkit.rk_integrate(field, [-1.0 + 0j, 1.0 + 0j], 5.0, 1e-8,
                            separation=separation, collision_threshold=1e-3)
    assert 0 < err.value.time < 5.0


def test_trajectory_monitor_recording():
    traj = numkit.rk_integrate(lambda y: 1j * y, [1.0 + 0j], 1.0, 1e-8,
                               monitors={"radius": lambda y: abs(y[0])})
    assert len(traj.monitors["radius"]) == len(traj.times)
    assert np.max(np.abs(traj.monitors["radius"] - 1.0)) < 1e-7


def test_trajectory_times_strictly_increasing():
    with pytest.raises(ParameterError):
        numkit.Trajectory(np.array([0.0, 0.0]), np.zeros((2, 1), dtype=complex))

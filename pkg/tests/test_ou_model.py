"""Trajectory recursion tests against closed forms.

With the deterministic driver G_t = t and theta = 1 everything integrates by
hand:

    X_t   = e^t - 1
    Z_t   = int_0^t e^{-s} s ds            = 1 - (1+t) e^{-t}
    A_t   = e^{-t} int_0^t s e^s ds        = (t-1) + e^{-t}
    Psi_t = G_t - theta A_t                = 1 - e^{-t}  (at t = 1)
    xi_t  = e^{-t} G_t + theta Z_t         = 1 - e^{-t}  (at t = 1)
    e^{2t} D_t = int_0^t (e^s - 1)^2 ds    = (e^2 - 4e + 5)/2  (at t = 1)
    R_t   = G_t^2/2 - theta int G^2 + theta^2 int G A = 1 - 2/e  (at t = 1)

These values are independent of the recursion code, so they pin both the
numerics and the sign conventions.
"""
from __future__ import annotations

import math

import numpy as np
import pytest

from conftest import function_path, linear_path
from ouestim.kernels import bm
from ouestim.ou_model import (
    ScaledTrajectory,
    build_trajectory,
    materialize_x,
    scaled_identity_residual,
)
from ouestim.pathgen import SamplePath, TimeGrid, sample_fbm_circulant

E = math.e


# ---------------------------------------------------------------------------
# closed-form oracle: linear driver


@pytest.fixture(scope="module")
def traj():
    return build_trajectory(linear_path(1.0, 4096), theta=1.0)


class TestLinearDriver:
    def test_terminal_x_both_routes(self, traj):
        want = E - 1.0
        assert materialize_x(traj)[-1] == pytest.approx(want, rel=1e-6)
        assert materialize_x(traj, via="representation")[-1] == pytest.approx(want, rel=1e-6)

    def test_terminal_z(self, traj):
        assert traj.z[-1] == pytest.approx(1.0 - 2.0 / E, rel=1e-6)

    def test_terminal_psi(self, traj):
        assert traj.psi[-1] == pytest.approx(1.0 - 1.0 / E, rel=1e-6)

    def test_terminal_xi(self, traj):
        assert traj.xi[-1] == pytest.approx(1.0 - 1.0 / E, rel=1e-6)

    def test_terminal_energy(self, traj):
        want = (E**2 - 4.0 * E + 5.0) / 2.0
        assert math.exp(2.0) * traj.d[-1] == pytest.approx(want, rel=1e-5)

    def test_terminal_rscaled(self, traj):
        assert traj.rscaled[-1] == pytest.approx((1.0 - 2.0 / E) / E, rel=1e-5)

    def test_interior_z(self, traj):
        # Z_t = 1 - (1+t)e^{-t}, checked away from the endpoint
        k = 4096 // 4
        t = traj.times[k]
        assert traj.z[k] == pytest.approx(1.0 - (1.0 + t) * math.exp(-t), rel=1e-6)

    def test_identity_residual_small(self, traj):
        rel = abs(scaled_identity_residual(traj)[-1]) / (0.5 * traj.xi[-1] ** 2)
        assert rel < 1e-4

    def test_x_routes_agree_everywhere(self, traj):
        a = materialize_x(traj)
        b = materialize_x(traj, via="representation")
        np.testing.assert_allclose(a[1:], b[1:], rtol=1e-12, atol=1e-14)


def test_sine_driver_closed_forms():
    """G_t = sin t, theta = 1: independent second oracle with curvature."""
    traj = build_trajectory(function_path(math.sin, 1.0, 4096), theta=1.0)
    z_want = 0.5 * (1.0 - math.exp(-1.0) * (math.sin(1.0) + math.cos(1.0)))
    a_want = 0.5 * (math.sin(1.0) - math.cos(1.0) + math.exp(-1.0))
    assert traj.z[-1] == pytest.approx(z_want, rel=1e-6)
    assert traj.psi[-1] == pytest.approx(math.sin(1.0) - a_want, rel=1e-6)
    assert traj.xi[-1] == pytest.approx(math.exp(-1.0) * math.sin(1.0) + z_want, rel=1e-6)


def test_identity_residual_shrinks_at_second_order():
    res = []
    for n in (512, 2048):
        traj = build_trajectory(function_path(math.sin, 1.0, n), theta=1.0)
        res.append(abs(scaled_identity_residual(traj)[-1]))
    ratio = res[0] / res[1]
    assert 8.0 < ratio < 32.0  # h^2 law: 4x refinement -> ~16x


# ---------------------------------------------------------------------------
# structural properties


def test_zero_driver_gives_zero_trajectory():
    grid = TimeGrid(2.0, 128)
    path = SamplePath(grid, np.zeros(129), bm(), "null", 0)
    traj = build_trajectory(path, 1.5)
    for arr in (traj.xi, traj.z, traj.psi, traj.d, traj.rscaled):
        np.testing.assert_array_equal(arr, np.zeros(129))


def test_energy_is_nonnegative_and_compounds():
    """d_k >= 0 always, and e^{2 theta t_k} d_k is nondecreasing: the
    discounted recursion only ever adds nonnegative trapezoid mass."""
    grid = TimeGrid(10.0, 512)
    path = sample_fbm_circulant(0.7, grid, seed=55)
    traj = build_trajectory(path, 2.0)
    assert np.all(traj.d >= 0.0)
    undiscounted = np.exp(2.0 * 2.0 * traj.times) * traj.d
    assert np.all(np.diff(undiscounted) >= -1e-9 * undiscounted[-1])


def test_identity_residual_on_random_path():
    path = sample_fbm_circulant(0.7, TimeGrid(1.0, 4096), seed=77)
    traj = build_trajectory(path, 1.0)
    rel = abs(scaled_identity_residual(traj)[-1]) / (0.5 * traj.xi[-1] ** 2 + 1e-300)
    assert rel < 1e-4


def test_validation():
    path = linear_path(1.0, 64)
    with pytest.raises(ValueError):
        build_trajectory(path, 0.0)
    with pytest.raises(ValueError):
        build_trajectory(path, -1.0)
    bad_values = np.zeros(65)
    bad_values[3] = np.nan
    bad = SamplePath(TimeGrid(1.0, 64), bad_values, bm(), "null", 0)
    with pytest.raises(ValueError):
        build_trajectory(bad, 1.0)


def test_materialize_refuses_overflowing_horizon():
    traj = build_trajectory(linear_path(100.0, 256), theta=8.0)  # theta*T = 800
    with pytest.raises(ValueError):
        materialize_x(traj)
    # the discounted trajectory itself is perfectly healthy
    assert np.all(np.isfinite(traj.xi))


def test_materialize_rejects_unknown_route():
    traj = build_trajectory(linear_path(1.0, 64), theta=1.0)
    with pytest.raises(ValueError):
        materialize_x(traj, via="banana")


def test_times_property_matches_grid():
    path = linear_path(2.0, 32)
    traj = build_trajectory(path, 1.0)
    np.testing.assert_array_equal(traj.times, path.grid.times)
    assert isinstance(traj, ScaledTrajectory)

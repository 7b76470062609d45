import numpy as np
import pytest

from artifact.fluid import finite_volume as fv
from artifact.fluid.grids import GaugeError, Grid1D, Grid3DPeriodic, gauss_field_1d, poisson_solve


def test_grid1d_geometry():
    g = Grid1D(16, L=4.0)
    assert g.dx == pytest.approx(0.25)
    assert g.x[0] == pytest.approx(0.125)
    with pytest.raises(ValueError):
        Grid1D(4)
    with pytest.raises(ValueError):
        Grid1D(16, L=-1.0)


def test_spectral_derivative_exact_for_modes():
    g = Grid1D(64)
    assert np.allclose(g.ddx(np.sin(3 * g.x)), 3 * np.cos(3 * g.x), atol=1e-12)


def test_poisson_single_mode():
    # Delta phi = 4 pi (rho_bar - rho) with rho = 1 + eps cos x gives phi = 4 pi eps cos x
    g = Grid1D(64)
    eps = 0.1
    phi = poisson_solve(1.0 + eps * np.cos(g.x), 1.0, g)
    assert np.allclose(phi, 4 * np.pi * eps * np.cos(g.x), atol=1e-12)
    E = gauss_field_1d(1.0 + eps * np.cos(g.x), 1.0, g)
    assert np.allclose(E, -4 * np.pi * eps * np.sin(g.x), atol=1e-12)


def test_poisson_rejects_net_charge():
    g = Grid1D(32)
    with pytest.raises(GaugeError):
        poisson_solve(np.full(32, 1.1), 1.0, g)


def test_poisson_3d():
    g = Grid3DPeriodic(16)
    x, y, z = g.mesh()
    rho = 1.0 + 0.2 * np.cos(x) * np.sin(2 * y)
    phi = poisson_solve(rho, 1.0, g)
    lap = g.div(g.grad(phi))
    assert np.allclose(lap, 4 * np.pi * (1.0 - rho), atol=1e-11)
    assert abs(phi.mean()) < 1e-14


def test_helmholtz_split():
    g = Grid3DPeriodic(16)
    x, y, z = g.mesh()
    v = np.array([np.sin(y) + np.cos(x), np.cos(z) * np.sin(x), np.sin(x + y) + 0.3])
    grad, sol = g.gradient_part(v), g.solenoidal_part(v)
    assert np.allclose(grad + sol + v.mean(axis=(1, 2, 3), keepdims=True), v, atol=1e-12)
    assert np.max(np.abs(g.curl(grad))) < 1e-12
    assert np.max(np.abs(g.div(sol))) < 1e-12
    assert abs(g.dot(grad, sol)) < 1e-14


def test_div_curl_vanishes():
    g = Grid3DPeriodic(12)
    x, y, z = g.mesh()
    v = np.array([np.sin(y), np.cos(x + z), np.sin(2 * x)])
    assert np.max(np.abs(g.div(g.curl(v)))) < 1e-12


def test_slope_limiter_flat_at_extrema():
    q = np.array([[0.0, 1.0, 0.0, 1.0, 2.0, 3.0, 4.0, 5.0]])
    s = fv.SLOPES["mc"](q)
    assert s[0, 1] == 0.0
    assert s[0, 4] == pytest.approx(1.0)


def test_cfl_guard():
    fv.check_cfl(0.1, 1.0, 1.0)
    with pytest.raises(fv.CFLViolation):
        fv.check_cfl(1.0, 1.0, 1.0)


def test_ssp_rk3_third_order():
    # y' = y; one step from y = 1
    out = fv.ssp_rk3(np.array([1.0]), 0.1, lambda q: q)
    assert out[0] == pytest.approx(1 + 0.1 + 0.005 + 0.1**3 / 6, rel=1e-14)

import numpy as np
import pytest

from artifact.fluid import curl_div as cd
from artifact.fluid.grids import Grid3DPeriodic


@pytest.fixture(scope="module")
def grid():
    return Grid3DPeriodic(16)


def test_leading_order_irrotational(grid):
    _, u0, _ = cd.manufactured_leading_order(grid)
    assert np.max(np.abs(grid.curl(u0))) < 1e-12


def test_curl_div_solution(grid):
    n0, u0, _ = cd.manufactured_leading_order(grid)
    f = cd.curl_div_forcing(n0, u0, cd.consistent_dE0_dt(n0, u0, grid))
    B = cd.curl_div_solve(f, grid)
    assert np.max(np.abs(grid.div(B))) < 1e-12
    assert np.max(np.abs(grid.curl(B) - f)) < 1e-10


def test_single_mode_oracle(grid):
    x, y, z = grid.mesh()
    # B = (0, 0, sin x) has curl (0, -cos x, 0)
    f = np.array([np.zeros_like(x), -np.cos(x), np.zeros_like(x)])
    B = cd.curl_div_solve(f, grid)
    assert np.allclose(B[2], np.sin(x), atol=1e-13)
    assert np.allclose(B[:2], 0.0, atol=1e-13)


def test_inconsistent_forcing_rejected(grid):
    x, y, z = grid.mesh()
    with pytest.raises(cd.InconsistentForcing):
        cd.curl_div_solve(np.array([np.sin(x), 0 * x, 0 * x]), grid)
    with pytest.raises(cd.InconsistentForcing):
        cd.curl_div_solve(np.ones((3, 16, 16, 16)), grid)


def test_gradient_pairings_vanish(grid):
    n0, u0, phi0 = cd.manufactured_leading_order(grid)
    a, b = cd.gradient_part_pairings(n0, u0, phi0, 1.0, grid)
    assert abs(a) < 1e-10 and abs(b) < 1e-10


def test_tier_constraints(grid):
    tier = cd.manufactured_tier(grid)
    assert np.allclose(grid.div(tier.E1), -4 * np.pi * tier.n1, atol=1e-11)
    assert np.max(np.abs(grid.div(tier.B1))) < 1e-12
    gauss, divb = cd.residual_identities(tier, grid, 10.0)
    assert gauss < 1e-8 and divb < 1e-8


def test_residuals_decay_like_inverse_c(grid):
    tier = cd.manufactured_tier(grid)
    cs = np.array([10.0, 20.0, 40.0, 80.0])
    norms = [cd.residual_norm(tier, grid, c) for c in cs]
    slope = np.polyfit(np.log(cs), np.log(norms), 1)[0]
    assert slope == pytest.approx(-1.0, abs=0.1)


def test_reconstruct(grid):
    tier = cd.manufactured_tier(grid)
    n, u, E, B = tier.reconstruct(4.0)
    assert np.allclose(n, tier.n0 + tier.n1 / 4.0)
    assert np.allclose(B, tier.B1 / 4.0)

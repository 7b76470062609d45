"""Spectral curl-div solve on the periodic torus and the first-order expansion tier."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grids import Grid3DPeriodic, poisson_solve


class InconsistentForcing(ValueError):
    """Forcing whose divergence does not vanish."""


def curl_div_forcing(n0, u0, dE0_dt) -> np.ndarray:
    """f = d_t E0 - 4 pi n0 u0."""
    return dE0_dt - 4.0 * np.pi * n0[None] * u0


def consistent_dE0_dt(n0, u0, grid: Grid3DPeriodic) -> np.ndarray:
    """d_t E0 from continuity and Gauss: curl-free with div = 4 pi div(n0 u0).

    The uniform mode is 4 pi mean(n0 u0), which makes the forcing mean-zero.
    """
    j = n0[None] * u0
    mean = j.mean(axis=(-3, -2, -1), keepdims=True)
    return 4.0 * np.pi * (grid.gradient_part(j) + mean)


def curl_div_solve(f: np.ndarray, grid: Grid3DPeriodic, tol: float = 1e-8) -> np.ndarray:
    """B with div B = 0 and curl B = f for divergence-free, mean-zero f.

    B_hat(k) = i k x f_hat(k) / |k|^2 for k != 0 and B_hat(0) = 0.
    """
    scale = max(1.0, float(np.max(np.abs(f))))
    if np.max(np.abs(grid.div(f))) > tol * scale:
        raise InconsistentForcing("forcing has non-zero divergence")
    if np.max(np.abs(f.mean(axis=(-3, -2, -1)))) > tol * scale:
        raise InconsistentForcing("forcing has a non-zero mean")
    k = grid.wavenumbers()
    k2 = np.sum(k * k, axis=0)
    k2[0, 0, 0] = 1.0
    Bh = np.cross(1j * k, grid.fft(f), axis=0) / k2
    Bh[:, 0, 0, 0] = 0.0
    return grid.ifft(Bh)


def solve_b1(n0, u0, grid: Grid3DPeriodic, dE0_dt=None) -> np.ndarray:
    if dE0_dt is None:
        dE0_dt = consistent_dE0_dt(n0, u0, grid)
    return curl_div_solve(curl_div_forcing(n0, u0, dE0_dt), grid)


def manufactured_leading_order(grid: Grid3DPeriodic, n_bar: float = 1.0, amp: float = 0.1):
    """n0 = n_bar + amp cos x1 and irrotational u0 = grad(sin x1 sin x2 sin x3)."""
    x, y, z = grid.mesh()
    n0 = n_bar + amp * np.cos(x)
    u0 = np.array(
        [np.cos(x) * np.sin(y) * np.sin(z), np.sin(x) * np.cos(y) * np.sin(z), np.sin(x) * np.sin(y) * np.cos(z)]
    )
    phi0 = np.sin(x) * np.sin(y) * np.sin(z)
    return n0, u0, phi0


def gradient_part_pairings(n0, u0, phi0, n_bar: float, grid: Grid3DPeriodic, n_tests: int = 8, seed: int = 0):
    """Pair grad(Phi), Phi = d_t phi - 4 pi n_bar phi0, with random divergence-free fields.

    Also returns the pairing gap between f and -4 pi (n0 - n_bar) u0, which
    vanishes because the two differ by exactly grad(Phi).
    Returns (max |<grad Phi, w>|, max |<f + 4 pi (n0 - n_bar) u0, w>|).
    """
    rng = np.random.default_rng(seed)
    dE0 = consistent_dE0_dt(n0, u0, grid)
    # E0 = grad phi, so d_t phi solves Delta (d_t phi) = div d_t E0
    dphi = grid.inverse_laplacian(grid.div(dE0))
    grad_Phi = grid.grad(dphi - 4.0 * np.pi * n_bar * phi0)
    f = curl_div_forcing(n0, u0, dE0)
    effective = -4.0 * np.pi * (n0 - n_bar)[None] * u0
    mean_eff = effective.mean(axis=(-3, -2, -1), keepdims=True)
    worst_grad, worst_eff = 0.0, 0.0
    for _ in range(n_tests):
        w = grid.solenoidal_part(_random_smooth_field(grid, rng))
        worst_grad = max(worst_grad, abs(grid.dot(grad_Phi, w)))
        worst_eff = max(worst_eff, abs(grid.dot(f - (effective - mean_eff), w)))
    return worst_grad, worst_eff


def _random_smooth_field(grid: Grid3DPeriodic, rng, kmax: int = 4) -> np.ndarray:
    k = grid.wavenumbers()
    mask = np.max(np.abs(k), axis=0) <= kmax
    coeffs = (rng.normal(size=(3,) + mask.shape) + 1j * rng.normal(size=(3,) + mask.shape)) * mask
    field = grid.ifft(coeffs)
    return field / np.max(np.abs(field))


# first-order tier and remainder residuals ----------------------------------------


@dataclass(frozen=True)
class ExpansionTier:
    """Snapshot of the order-0 and order-1 fields with the time derivatives the
    residuals need. B0 vanishes for the Euler-Poisson leading order."""

    n0: np.ndarray
    u0: np.ndarray
    E0: np.ndarray
    n1: np.ndarray
    u1: np.ndarray
    E1: np.ndarray
    B1: np.ndarray
    dE1_dt: np.ndarray
    dB1_dt: np.ndarray
    B0: np.ndarray | None = None

    def reconstruct(self, c: float, remainder=None):
        """(n, u, E, B) = order 0 + order 1 / c + remainder."""
        N, U, E, B = remainder if remainder is not None else (0.0, 0.0, 0.0, 0.0)
        B0 = self.B0 if self.B0 is not None else np.zeros_like(self.B1)
        return (
            self.n0 + self.n1 / c + N,
            self.u0 + self.u1 / c + U,
            self.E0 + self.E1 / c + E,
            B0 + self.B1 / c + B,
        )


def _gradient_field_from_charge(q, grid):
    """Curl-free, mean-zero F with div F = -4 pi q (q mean-zero)."""
    return grid.grad(grid.inverse_laplacian(-4.0 * np.pi * q))


def manufactured_tier(grid: Grid3DPeriodic, n_bar: float = 1.0, K: float = 0.1, amp1: float = 0.3) -> ExpansionTier:
    """Smooth tier satisfying every constraint the remainder identities use.

    Leading order from :func:`manufactured_leading_order` with E0 from Gauss.
    First order: mean-zero n1 and a generic u1; E1 curl-free with
    div E1 = -4 pi n1; d_t E1 curl-free with div d_t E1 = -4 pi d_t n1 where
    d_t n1 = -div(n0 u1 + n1 u0); B1 and d_t B1 from the curl-div solve with
    the Euler-Poisson time derivative of n0 u0.
    """
    x, y, z = grid.mesh()
    n0, u0, _ = manufactured_leading_order(grid, n_bar)
    E0 = grid.grad(poisson_solve(n0, n_bar, grid))
    n1 = amp1 * np.sin(x + 2.0 * y) * np.cos(z)
    u1 = amp1 * np.array([np.sin(y) * np.cos(z), np.cos(x + z), np.sin(2.0 * x) * np.sin(y)])
    E1 = _gradient_field_from_charge(n1, grid)
    dn1 = -grid.div(n0[None] * u1 + n1[None] * u0)
    dE1 = _gradient_field_from_charge(dn1, grid)
    B1 = solve_b1(n0, u0, grid)
    # Euler-Poisson time derivatives of the leading order
    dn0 = -grid.div(n0[None] * u0)
    T0p = K * n0 ** (-1.0 / 3.0) * (2.0 / 3.0)
    du0 = -_advect(u0, u0, grid) - 2.5 * T0p[None] * grid.grad(n0) - E0
    dj = dn0[None] * u0 + n0[None] * du0
    df = -4.0 * np.pi * (grid.solenoidal_part(dj))
    dB1 = curl_div_solve(df, grid)
    return ExpansionTier(n0, u0, E0, n1, u1, E1, B1, dE1, dB1)


def _advect(a, b, grid):
    """(a . grad) b for vector fields."""
    return np.array([np.sum(a * grid.grad(b[i]), axis=0) for i in range(3)])


def remainder_residuals(tier: ExpansionTier, grid: Grid3DPeriodic, c: float):
    """(R_n, R_u, R_E, R_B) left over when the truncated expansion is inserted."""
    B0 = tier.B0 if tier.B0 is not None else np.zeros_like(tier.B1)
    n1u1 = tier.n1[None] * tier.u1
    R_n = grid.div(n1u1) / c**2
    R_u = (
        _advect(tier.u1, tier.u1, grid) / c**2
        + (np.cross(tier.u1, B0, axis=0) + np.cross(tier.u0, tier.B1, axis=0)) / c**2
        + np.cross(tier.u1, tier.B1, axis=0) / c**3
    )
    R_E = (
        tier.dE1_dt / c
        - 4.0 * np.pi * (tier.n1[None] * tier.u0 + tier.n0[None] * tier.u1) / c
        - 4.0 * np.pi * n1u1 / c**2
    )
    R_B = tier.dB1_dt / c
    return R_n, R_u, R_E, R_B


def residual_identities(tier: ExpansionTier, grid: Grid3DPeriodic, c: float) -> tuple[float, float]:
    """(max |div R_E + 4 pi R_n|, max |div R_B|)."""
    R_n, _, R_E, R_B = remainder_residuals(tier, grid, c)
    return float(np.max(np.abs(grid.div(R_E) + 4.0 * np.pi * R_n))), float(np.max(np.abs(grid.div(R_B))))


def residual_norm(tier: ExpansionTier, grid: Grid3DPeriodic, c: float) -> float:
    """Sum of the sup norms of the four residuals."""
    return float(sum(np.max(np.abs(r)) for r in remainder_residuals(tier, grid, c)))

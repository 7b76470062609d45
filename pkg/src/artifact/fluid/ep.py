"""Classical isentropic Euler-Poisson in one space dimension and its linearisation.

    rho_t + (rho u)_x = 0,
    (rho u)_t + (rho u^2 + K rho^(5/3))_x = -rho E,    E = phi_x,
    phi_xx = 4 pi (rho_bar - rho).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np
from scipy.optimize import curve_fit

from .finite_volume import CFL, SolverError, check_cfl, llf_divergence, ssp_rk3
from .grids import Grid1D, gauss_field_1d, poisson_solve

VACUUM_FLOOR = 1e-8


@dataclass(frozen=True)
class EPState:
    rho: np.ndarray
    u: np.ndarray
    phi: np.ndarray
    rho_bar: float
    grid: Grid1D
    t: float = 0.0

    @property
    def E(self) -> np.ndarray:
        return self.grid.ddx(self.phi)


def ep_state(rho, u, grid: Grid1D, rho_bar: float | None = None, t: float = 0.0) -> EPState:
    """State with the potential solved from the density; rho_bar defaults to mean(rho)."""
    rho = np.asarray(rho, dtype=float)
    rho_bar = float(np.mean(rho)) if rho_bar is None else rho_bar
    return EPState(rho, np.asarray(u, dtype=float), poisson_solve(rho, rho_bar, grid), rho_bar, grid, t)


def pressure(rho, K: float):
    return K * rho ** (5.0 / 3.0)


def pressure_derivative(rho, K: float):
    return (5.0 / 3.0) * K * rho ** (2.0 / 3.0)


def _flux(K: float):
    def flux(q):
        rho, m = q
        if np.any(rho <= 0):
            raise SolverError("vacuum in reconstructed state")
        u = m / rho
        F = np.array([m, m * u + pressure(rho, K)])
        return F, np.abs(u) + np.sqrt(pressure_derivative(rho, K))

    return flux


def max_speed(state: EPState, K: float) -> float:
    return float(np.max(np.abs(state.u) + np.sqrt(pressure_derivative(state.rho, K))))


def stable_dt(state: EPState, K: float, cfl: float = CFL) -> float:
    return cfl * state.grid.dx / max_speed(state, K)


def ep_rhs(q: np.ndarray, K: float, rho_bar: float, grid: Grid1D, limiter: str = "mc") -> np.ndarray:
    if np.any(q[0] <= VACUUM_FLOOR * rho_bar):
        raise SolverError("density fell below the vacuum floor")
    out = llf_divergence(q, _flux(K), grid.dx, limiter)
    E = gauss_field_1d(q[0], rho_bar, grid, tol=1e-8)
    out[1] -= q[0] * E
    return out


def ep_step(state: EPState, dt: float, K: float, limiter: str = "mc") -> EPState:
    """One SSP-RK3 step; the potential is re-solved at every stage."""
    check_cfl(dt, state.grid.dx, max_speed(state, K))
    q = np.array([state.rho, state.rho * state.u])
    q = ssp_rk3(q, dt, lambda s: ep_rhs(s, K, state.rho_bar, state.grid, limiter))
    if not np.all(np.isfinite(q)) or np.any(q[0] <= VACUUM_FLOOR * state.rho_bar):
        raise SolverError(f"inadmissible state after t = {state.t}")
    phi = poisson_solve(q[0], state.rho_bar, state.grid, tol=1e-8)
    return replace(state, rho=q[0], u=q[1] / q[0], phi=phi, t=state.t + dt)


# linearisation ----------------------------------------------------------------


@dataclass(frozen=True)
class Perturbation:
    """First-order fields (n1, u1, E1) with div E1 = -4 pi n1."""

    n1: np.ndarray
    u1: np.ndarray
    E1: np.ndarray
    t: float = 0.0


def perturbation(n1, u1, grid: Grid1D, t: float = 0.0) -> Perturbation:
    n1 = np.asarray(n1, dtype=float)
    return Perturbation(n1, np.asarray(u1, dtype=float), gauss_field_1d(n1, 0.0, grid), t)


def frozen_background(rho, u) -> Callable[[float], tuple[np.ndarray, np.ndarray]]:
    rho = np.asarray(rho, dtype=float)
    u = np.asarray(u, dtype=float)
    return lambda t: (rho, u)


def linearized_ep_step(
    background: Callable[[float], tuple[np.ndarray, np.ndarray]],
    pert: Perturbation,
    dt: float,
    K: float,
    grid: Grid1D,
    limiter: str = "mc",
) -> Perturbation:
    """One SSP-RK3 step of the first-order system

        n1_t + (n0 u1 + n1 u0)_x = 0,
        u1_t + (u0 u1 + (5/2) T0'(n0) n1)_x = -E1,    E1_x = -4 pi n1,

    with (5/2) T0'(n0) = P'(n0) / n0. ``background(t)`` returns (n0, u0).
    """
    n0, u0 = background(pert.t)
    check_cfl(dt, grid.dx, float(np.max(np.abs(u0) + np.sqrt(pressure_derivative(n0, K)))))

    def rhs_at(t):
        n0, u0 = background(t)
        coef = pressure_derivative(n0, K) / n0
        speed = np.abs(u0) + np.sqrt(pressure_derivative(n0, K))
        # linear flux evaluated at reconstructed states; coefficients at cell centres
        def flux(q):
            return np.array([n0 * q[1] + u0 * q[0], u0 * q[1] + coef * q[0]]), speed

        def rhs(q):
            out = llf_divergence(q, flux, grid.dx, limiter)
            out[1] -= gauss_field_1d(q[0], 0.0, grid, tol=1e-8)
            return out

        return rhs

    q = np.array([pert.n1, pert.u1])
    t = pert.t
    # SSP-RK3 with the background sampled at the stage times t, t + dt, t + dt/2
    q1 = q + dt * rhs_at(t)(q)
    q2 = 0.75 * q + 0.25 * (q1 + dt * rhs_at(t + dt)(q1))
    q = q / 3.0 + 2.0 / 3.0 * (q2 + dt * rhs_at(t + 0.5 * dt)(q2))
    return Perturbation(q[0], q[1], gauss_field_1d(q[0], 0.0, grid, tol=1e-8), t + dt)


# plasma oscillations -----------------------------------------------------------


def dispersion_frequency(rho_bar: float, K: float, k: float) -> float:
    """omega with omega^2 = 4 pi rho_bar + P'(rho_bar) k^2."""
    return float(np.sqrt(4.0 * np.pi * rho_bar + pressure_derivative(rho_bar, K) * k * k))


def _fit_frequency(t, a, guess):
    model = lambda t, A, B, w: A * np.cos(w * t) + B * np.sin(w * t)  # noqa: E731
    popt, _ = curve_fit(model, t, a, p0=[a[0], 0.0, guess])
    return float(abs(popt[2]))


def measure_dispersion(
    rho_bar: float = 1.0,
    K: float = 0.2,
    mode: int = 2,
    eps: float = 1e-4,
    N: int = 512,
    periods: float = 3.0,
    linearized: bool = False,
) -> tuple[float, float]:
    """(measured, predicted) angular frequency of a small density mode on [0, 2 pi)."""
    grid = Grid1D(N)
    k = 2.0 * np.pi * mode / grid.L
    omega = dispersion_frequency(rho_bar, K, k)
    t_end = periods * 2.0 * np.pi / omega
    shape = np.cos(k * grid.x)
    if linearized:
        state = perturbation(eps * shape, np.zeros(N), grid)
        bg = frozen_background(np.full(N, rho_bar), np.zeros(N))
        speed = float(np.sqrt(pressure_derivative(rho_bar, K)))
        density = lambda s: s.n1  # noqa: E731
        step = lambda s, dt: linearized_ep_step(bg, s, dt, K, grid)  # noqa: E731
    else:
        state = ep_state(rho_bar * (1.0 + eps * shape), np.zeros(N), grid, rho_bar)
        speed = max_speed(state, K)
        density = lambda s: s.rho - rho_bar  # noqa: E731
        step = lambda s, dt: ep_step(s, dt, K)  # noqa: E731
    nsteps = int(np.ceil(t_end / (0.5 * CFL * grid.dx / speed)))
    dt = t_end / nsteps
    times, amps = [0.0], [2.0 * np.mean(density(state) * shape)]
    for i in range(nsteps):
        state = step(state, dt)
        times.append((i + 1) * dt)
        amps.append(2.0 * np.mean(density(state) * shape))
    amps = np.array(amps) / amps[0]
    return _fit_frequency(np.array(times), amps, omega), omega

"""Relativistic Euler with electrostatic coupling in slab symmetry.

Conservative form with D = n u^0 / c and M = D h u / c^2:

    D_t + (D v)_x = 0,
    M_t + (M v + P)_x = -D E,    E_x = 4 pi (n_bar - D),

where v = c u / u^0 and the closure (h, P) is the isentrope of entropy S.
Multiplying the non-conservative momentum equation by n gives this form
because P'(n) = n h'(n) on an isentrope.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..special_functions import ratio_k3_k2_minus_one
from ..thermo import _n_dh_dn_from_gamma, isentrope_gamma, polytropic_constant
from .ep import EPState, ep_state, ep_step, max_speed
from .finite_volume import CFL, SolverError, check_cfl, llf_divergence, ssp_rk3
from .grids import Grid1D, gauss_field_1d


@dataclass(frozen=True)
class REMState:
    """Electrostatic slab state; B vanishes identically in this reduction."""

    n: np.ndarray
    u: np.ndarray
    E: np.ndarray
    c: float
    S: float
    n_bar: float
    grid: Grid1D
    t: float = 0.0

    @property
    def B(self) -> np.ndarray:
        return np.zeros_like(self.n)

    @property
    def D(self) -> np.ndarray:
        return self.n * np.sqrt(1.0 + (self.u / self.c) ** 2)

    def gauss_residual(self) -> float:
        return float(np.max(np.abs(self.grid.ddx(self.E) - 4.0 * np.pi * (self.n_bar - self.D))))


@dataclass(frozen=True)
class Closure:
    """Isentropic thermodynamics at given densities."""

    gamma: np.ndarray
    s: np.ndarray  # h / c^2 - 1
    P: np.ndarray
    sound: np.ndarray


def closure(n, S: float, c: float) -> Closure:
    g = isentrope_gamma(n, S, c)
    s = ratio_k3_k2_minus_one(g)
    P = n * c * c / g
    # relativistic sound speed^2 = c^2 n h'(n) / h
    sound = np.sqrt(np.clip(_n_dh_dn_from_gamma(g, c) / (1.0 + s), 0.0, None))
    return Closure(g, s, P, sound)


def rem_state(n, u, grid: Grid1D, c: float, S: float, n_bar: float | None = None, t: float = 0.0) -> REMState:
    """State with E from Gauss's law; n_bar defaults to the mean of n u^0 / c."""
    n = np.asarray(n, dtype=float)
    u = np.asarray(u, dtype=float)
    D = n * np.sqrt(1.0 + (u / c) ** 2)
    n_bar = float(np.mean(D)) if n_bar is None else n_bar
    return REMState(n, u, gauss_field_1d(D, n_bar, grid), c, S, n_bar, grid, t)


def conserved(state: REMState) -> np.ndarray:
    s = ratio_k3_k2_minus_one(isentrope_gamma(state.n, state.S, state.c))
    D = state.D
    return np.array([D, D * (1.0 + s) * state.u])


def recover_primitives(q: np.ndarray, S: float, c: float, tol: float = 1e-14, max_iter: int = 60):
    """(n, u, closure) from (D, M) by the fixed point u = (M/D) / (h(n)/c^2)."""
    D, M = q
    if np.any(D <= 0):
        raise SolverError("non-positive density")
    w = M / D
    u = w.copy()
    for _ in range(max_iter):
        n = D / np.sqrt(1.0 + (u / c) ** 2)
        cl = closure(n, S, c)
        u_new = w / (1.0 + cl.s)
        done = np.max(np.abs(u_new - u)) <= tol * (1.0 + np.max(np.abs(u)))
        u = u_new
        if done:
            break
    n = D / np.sqrt(1.0 + (u / c) ** 2)
    return n, u, closure(n, S, c)


def _flux(S: float, c: float):
    def flux(q):
        n, u, cl = recover_primitives(q, S, c)
        if np.any(np.abs(u) >= 0.5 * c):
            raise SolverError("|u| reached c/2")
        v = u / np.sqrt(1.0 + (u / c) ** 2)
        return np.array([q[0] * v, q[1] * v + cl.P]), np.abs(v) + cl.sound

    return flux


def rem_max_speed(state: REMState) -> float:
    cl = closure(state.n, state.S, state.c)
    v = state.u / np.sqrt(1.0 + (state.u / state.c) ** 2)
    return float(np.max(np.abs(v) + cl.sound))


def rem_step_1d(state: REMState, dt: float, limiter: str = "mc") -> REMState:
    """One SSP-RK3 step; E is re-solved from Gauss's law at every stage."""
    c, S, grid = state.c, state.S, state.grid
    if np.any(np.abs(state.u) >= 0.5 * c):
        raise SolverError("|u| must stay below c/2")
    check_cfl(dt, grid.dx, rem_max_speed(state))
    flux = _flux(S, c)

    def rhs(q):
        out = llf_divergence(q, flux, grid.dx, limiter)
        out[1] -= q[0] * gauss_field_1d(q[0], state.n_bar, grid, tol=1e-8)
        return out

    q = ssp_rk3(conserved(state), dt, rhs)
    if not np.all(np.isfinite(q)):
        raise SolverError(f"non-finite state after t = {state.t}")
    n, u, _ = recover_primitives(q, S, c)
    return replace(state, n=n, u=u, E=gauss_field_1d(q[0], state.n_bar, grid, tol=1e-8), t=state.t + dt)


# Newtonian limit ----------------------------------------------------------------


@dataclass(frozen=True)
class SlabData:
    """Smooth periodic data: leading order (n0, u0) and mean-zero first-order (n1, u1).

    Densities are even and velocities odd about x = 0, so the total momentum
    vanishes and mean-zero electric fields are consistent for all time.
    """

    n_bar: float = 1.0
    dn: float = 0.2
    du: float = 0.3
    dn1: float = 0.5
    du1: float = 0.5

    def leading(self, x):
        return self.n_bar + self.dn * np.cos(x), self.du * np.sin(x)

    def first_order(self, x):
        return self.dn1 * np.cos(2.0 * x), self.du1 * np.sin(2.0 * x)


def _ep_trajectory(data: SlabData, grid: Grid1D, K: float, dt: float, nsteps: int, limiter: str):
    rho, u = data.leading(grid.x)
    state = ep_state(rho, u, grid, data.n_bar)
    traj = [state]
    for _ in range(nsteps):
        state = ep_step(state, dt, K, limiter)
        traj.append(state)
    return traj


def _error(rem: REMState, ep: EPState) -> float:
    return float(
        np.max(np.abs(rem.n - ep.rho)) + np.max(np.abs(rem.u - ep.u)) + np.max(np.abs(rem.E - ep.E))
    )


def newtonian_limit_errors(
    c_list,
    N: int = 512,
    t_end: float = 0.5,
    S: float = 2.0,
    data: SlabData | None = None,
    first_order: bool = True,
    limiter: str = "mc",
) -> np.ndarray:
    """sup over steps in [0, t_end] of |n - rho| + |u - u_EP| + |E - E_EP| in sup norm.

    The relativistic run starts from n0 + n1/c, u0 + u1/c (``first_order``) or
    from the Euler-Poisson data itself. Both runs share one time step chosen
    from the leading-order data with a 3x safety margin.
    """
    data = data if data is not None else SlabData()
    grid = Grid1D(N)
    K = polytropic_constant(S)
    rho, u = data.leading(grid.x)
    speed = 3.0 * max_speed(ep_state(rho, u, grid, data.n_bar), K)
    nsteps = int(np.ceil(t_end / (CFL * grid.dx / speed)))
    dt = t_end / nsteps
    ep_traj = _ep_trajectory(data, grid, K, dt, nsteps, limiter)
    errors = []
    for c in c_list:
        n, v = data.leading(grid.x)
        if first_order:
            n1, v1 = data.first_order(grid.x)
            n, v = n + n1 / c, v + v1 / c
        state = rem_state(n, v, grid, c, S)
        worst = _error(state, ep_traj[0])
        for k in range(nsteps):
            state = rem_step_1d(state, dt, limiter)
            worst = max(worst, _error(state, ep_traj[k + 1]))
        errors.append(worst)
    return np.array(errors)


def loglog_slope(x, y) -> float:
    return float(np.polyfit(np.log(np.asarray(x, float)), np.log(np.asarray(y, float)), 1)[0])

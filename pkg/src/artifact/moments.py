"""Momentum moments of the relativistic Maxwellian and the boost that generates them.

Indices run 0..3 with metric diag(-1, 1, 1, 1); index 0 is the energy slot.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quadrature import product_rule
from .special_functions import ratio_k3_k2
from .thermo import FluidState, energy, energy_density, juttner, maxwellian_ball, pressure

METRIC = np.diag([-1.0, 1.0, 1.0, 1.0])


@dataclass(frozen=True)
class MomentSet:
    first: np.ndarray | None = None
    second: np.ndarray | None = None
    third: np.ndarray | None = None


def four_velocity(state: FluidState, c: float) -> np.ndarray:
    return np.concatenate([[state.u0(c)], state.u])


def lower(v: np.ndarray) -> np.ndarray:
    """Lower every index of a tensor of any rank with the Minkowski metric."""
    out = np.asarray(v, dtype=float)
    for axis in range(out.ndim):
        out = np.moveaxis(np.tensordot(METRIC, out, axes=([1], [axis])), 0, axis)
    return out


def lorentz_boost(u, c: float) -> np.ndarray:
    """Boost taking the rest four-velocity (c, 0, 0, 0) to (u^0, u)."""
    u = np.asarray(u, dtype=float)
    u0 = np.sqrt(c * c + u @ u)
    rt = u0 / c
    v = c * u / u0
    lam = np.empty((4, 4))
    lam[0, 0] = rt
    lam[0, 1:] = lam[1:, 0] = rt * v / c
    # (rt - 1)/|v|^2 rewritten as rt^2/(c^2 (rt + 1)), regular at u = 0
    factor = rt * rt / (c * c * (rt + 1.0))
    lam[1:, 1:] = np.eye(3) + factor * np.outer(v, v)
    return lam


def first_second_moments(state: FluidState, c: float) -> tuple[np.ndarray, np.ndarray]:
    """I^a = n u^a / c and T^{ab} = ((e + P)/c^3) u^a u^b + (P/c) g^{ab}."""
    U = four_velocity(state, c)
    e = energy_density(state, c)
    P = pressure(state, c)
    first = state.n * U / c
    second = (e + P) / c**3 * np.outer(U, U) + (P / c) * METRIC
    return first, second


def rest_frame_third_moment(state: FluidState, c: float) -> np.ndarray:
    if np.any(state.u != 0):
        raise ValueError("rest-frame moment requires u = 0")
    g = state.gamma(c)
    r = float(ratio_k3_k2(g))
    out = np.zeros((4, 4, 4))
    out[0, 0, 0] = state.n * c * c * (3.0 * r + g) / g
    diag = state.n * c * c * r / g
    for i in range(1, 4):
        out[0, i, i] = out[i, 0, i] = out[i, i, 0] = diag
    return out


def boosted_third_moment(state: FluidState, c: float) -> np.ndarray:
    """Closed-form T^{abc} of a moving Maxwellian."""
    u = state.u
    if u @ u >= c * c:
        raise ValueError("|u| must be below c")
    g = state.gamma(c)
    r = float(ratio_k3_k2(g))
    u0 = state.u0(c)
    uu = u @ u
    # every entry carries n K2/(c gamma K2); write K3 = r K2 and cancel K2
    pref = state.n / (c * g)
    a6 = 6.0 * r + g
    out = np.empty((4, 4, 4))
    out[0, 0, 0] = pref * ((3.0 * r + g) * u0**3 + 3.0 * r * u0 * uu)
    t00i = pref * ((5.0 * r + g) * u0**2 * u + r * uu * u)
    t0ij = pref * (a6 * u0 * np.outer(u, u) + c * c * r * u0 * np.eye(3))
    d = np.eye(3)
    tijk = pref * (
        a6 * np.einsum("i,j,k->ijk", u, u, u)
        + c * c * r * (np.einsum("i,jk->ijk", u, d) + np.einsum("j,ik->ijk", u, d) + np.einsum("k,ij->ijk", u, d))
    )
    out[0, 0, 1:] = out[0, 1:, 0] = out[1:, 0, 0] = t00i
    out[0, 1:, 1:] = out[1:, 0, 1:] = out[1:, 1:, 0] = t0ij
    out[1:, 1:, 1:] = tijk
    return out


def contracted_third_moment(state: FluidState, c: float) -> np.ndarray:
    """Boost of the rest-frame third moment by three copies of the boost matrix."""
    rest = rest_frame_third_moment(FluidState(state.n, np.zeros(3), state.T), c)
    lam = lorentz_boost(state.u, c)
    return np.einsum("ad,be,cf,def->abc", lam, lam, lam, rest)


def quadrature_moments(
    state: FluidState,
    c: float,
    n_radial: int = 200,
    n_theta: int = 64,
    n_phi: int = 128,
) -> MomentSet:
    """First, second and third moments by tensor quadrature on a ball around u.

    Integrands are p^a / p^0 M, p^a p^b / p^0 M and p^a p^b p^c / p^0 M with p^0
    in the energy slot.
    """
    axis = tuple(state.u) if np.any(state.u) else (0.0, 0.0, 1.0)
    ball = maxwellian_ball(state, c, n_radial, product_rule(n_theta, n_phi, axis=axis))
    p = ball.nodes
    p0 = energy(p, c)
    w = ball.weights * juttner(state, p, c) / p0
    P4 = np.concatenate([p0[:, None], p], axis=1)
    first = P4.T @ w
    second = np.einsum("ka,kb,k->ab", P4, P4, w)
    third = np.einsum("ka,kb,kc,k->abc", P4, P4, P4, w)
    return MomentSet(first=first, second=second, third=third)


def max_relative_error(closed: np.ndarray, quad: np.ndarray) -> float:
    """Entrywise error scaled by the largest closed-form entry."""
    return float(np.max(np.abs(closed - quad)) / np.max(np.abs(closed)))

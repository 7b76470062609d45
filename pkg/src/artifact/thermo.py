"""Thermodynamic closures for the relativistic Maxwellian.

Units follow the normalisation m = k_B = 1; the light speed ``c`` is always an
explicit argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .quadrature import BallQuadrature, SphereQuadrature, ball_rule, product_rule
from .special_functions import (
    bessel_k,
    log_kve2,
    ratio_k3_k2,
    ratio_k3_k2_derivative,
    ratio_k3_k2_minus_one,
)


class RootNotBracketedError(RuntimeError):
    pass


@dataclass(frozen=True)
class FluidState:
    """Number density ``n``, spatial four-velocity ``u`` and temperature ``T``."""

    n: float
    u: np.ndarray = field(default_factory=lambda: np.zeros(3))
    T: float = 1.0

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float).reshape(3)
        object.__setattr__(self, "u", u)
        if not (self.n > 0 and self.T > 0):
            raise ValueError("density and temperature must be positive")

    def u0(self, c: float) -> float:
        return math.sqrt(c * c + float(self.u @ self.u))

    def gamma(self, c: float) -> float:
        return c * c / self.T


@dataclass(frozen=True)
class GlobalMaxwellianParams:
    n_M: float
    T_M: float
    alpha: float = 0.75
    C_env: float = 2.0

    def __post_init__(self):
        if not 0.5 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (1/2, 1)")
        if self.n_M <= 0 or self.T_M <= 0 or self.C_env <= 1:
            raise ValueError("invalid global Maxwellian parameters")

    def envelopes(self, state: FluidState) -> bool:
        return self.n_M < state.n < 2 * self.n_M and self.T_M < state.T < 2 * self.T_M


def _log_normalisation(n: float, T: float, c: float) -> float:
    # log of n gamma / (4 pi c^3 K2(gamma)) without the exp(-gamma) factor of K2
    g = c * c / T
    return math.log(n * g / (4.0 * math.pi * c**3)) - float(log_kve2(g))


def energy(p, c: float) -> np.ndarray:
    """p^0 = sqrt(c^2 + |p|^2) along the last axis."""
    p = np.asarray(p, dtype=float)
    return np.sqrt(c * c + np.sum(p * p, axis=-1))


def juttner(state: FluidState, p, c: float) -> np.ndarray:
    """Relativistic Maxwellian n gamma/(4 pi c^3 K2(gamma)) exp(u^mu p_mu / T).

    ``p`` may carry leading batch axes; the last axis has length 3.
    """
    p = np.asarray(p, dtype=float)
    if not np.all(np.isfinite(p)):
        raise ValueError("momentum must be finite")
    p0 = energy(p, c)
    # u^mu p_mu + c^2 keeps the exponent O(1) after folding exp(gamma) from K2
    contraction = -state.u0(c) * p0 + p @ state.u
    expo = (contraction + c * c) / state.T
    return np.exp(_log_normalisation(state.n, state.T, c) + expo)


def global_maxwellian(params: GlobalMaxwellianParams, p, c: float) -> np.ndarray:
    """n_M gamma_M / (4 pi c^3 K2(gamma_M)) exp(-c p^0 / T_M)."""
    p0 = energy(p, c)
    expo = -c * (p0 - c) / params.T_M
    return np.exp(_log_normalisation(params.n_M, params.T_M, c) + expo)


def pressure(state: FluidState, c: float) -> float:
    return state.n * state.T


def energy_density(state: FluidState, c: float, form: str = "K3") -> float:
    """e = c^2 n K3/K2 - P, or the equivalent c^2 n K1/K2 + 3P with ``form='K1'``."""
    g = state.gamma(c)
    P = pressure(state, c)
    if form == "K3":
        return c * c * state.n * float(ratio_k3_k2(g)) - P
    if form == "K1":
        k1 = bessel_k(1, g).scaled
        k2 = bessel_k(2, g).scaled
        return c * c * state.n * k1 / k2 + 3.0 * P
    raise ValueError(f"unknown form {form!r}")


def enthalpy(state: FluidState, c: float) -> float:
    """h = (e + P)/n = c^2 K3(gamma)/K2(gamma)."""
    return c * c * float(ratio_k3_k2(state.gamma(c)))


# isentrope ---------------------------------------------------------------


def log_density_on_isentrope(gamma, S: float, c: float) -> np.ndarray:
    """log n for n(T) = 4 pi c^3 e^-S (K2(gamma)/gamma) exp(gamma K3/K2)."""
    g = np.asarray(gamma, dtype=float)
    s = ratio_k3_k2_minus_one(g)
    return math.log(4.0 * math.pi * c**3) - S + log_kve2(g) - np.log(g) + g * s


def density_on_isentrope(T, S: float, c: float) -> np.ndarray:
    T = np.asarray(T, dtype=float)
    return np.exp(log_density_on_isentrope(c * c / T, S, c))


def _dlogn_dgamma(g: np.ndarray) -> np.ndarray:
    return 1.0 / g + g * ratio_k3_k2_derivative(g)


def isentrope_gamma(n, S: float, c: float, tol: float = 1e-13, max_iter: int = 60) -> np.ndarray:
    """Vectorised gamma = c^2/T on the isentrope, Newton in log(gamma)."""
    n = np.asarray(n, dtype=float)
    if np.any(n <= 0):
        raise ValueError("density must be positive")
    target = np.log(n)
    T0 = np.exp((2.0 / 3.0) * S - 5.0 / 3.0) * n ** (2.0 / 3.0) / (2.0 * np.pi)
    x = np.log(c * c / T0)
    for _ in range(max_iter):
        g = np.exp(x)
        f = log_density_on_isentrope(g, S, c) - target
        step = f / (g * _dlogn_dgamma(g))
        step = np.clip(step, -2.0, 2.0)
        x = x - step
        if np.all(np.abs(step) < tol):
            break
    return np.exp(x)


def solve_temperature(n: float, S: float, c: float, bracket: tuple[float, float] | None = None) -> float:
    """Temperature with n(T) = n on the isentrope of entropy ``S``.

    Safeguarded Newton on log T inside a bracket; bisection steps are taken
    whenever Newton would leave it.
    """
    if n <= 0:
        raise ValueError("density must be positive")
    T0 = math.exp((2.0 / 3.0) * S - 5.0 / 3.0) * n ** (2.0 / 3.0) / (2.0 * math.pi)
    lo, hi = bracket if bracket is not None else (T0 * 1e-3, T0 * 1e3)
    lo, hi = math.log(lo), math.log(hi)
    target = math.log(n)

    def resid(x):
        return float(log_density_on_isentrope(c * c / math.exp(x), S, c)) - target

    f_lo, f_hi = resid(lo), resid(hi)
    if f_lo * f_hi > 0:
        raise RootNotBracketedError(f"no sign change of n(T) - n on [{math.exp(lo)}, {math.exp(hi)}]")
    x = math.log(T0) if lo < math.log(T0) < hi else 0.5 * (lo + hi)
    for _ in range(200):
        f = resid(x)
        if abs(f) < 1e-15:
            break
        if (f < 0) == (f_lo < 0):
            lo, f_lo = x, f
        else:
            hi, f_hi = x, f
        g = c * c / math.exp(x)
        # d log n / d log T = -gamma d log n / d gamma
        slope = -g * float(_dlogn_dgamma(np.array([g]))[0])
        x_new = x - f / slope if slope != 0 else 0.5 * (lo + hi)
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) < 1e-15:
            x = x_new
            break
        x = x_new
    return math.exp(x)


def enthalpy_on_isentrope(n, S: float, c: float) -> np.ndarray:
    g = isentrope_gamma(n, S, c)
    return c * c * (1.0 + ratio_k3_k2_minus_one(g))


def _n_dh_dn_from_gamma(g: np.ndarray, c: float) -> np.ndarray:
    rp = ratio_k3_k2_derivative(g)
    return (c * c / g) * rp / (rp + 1.0 / g**2)


def n_dh_dn(n, S: float, c: float) -> np.ndarray:
    """n h'(n) on the isentrope by the chain rule through gamma(n)."""
    return _n_dh_dn_from_gamma(isentrope_gamma(n, S, c), c)


def entropy_of(state: FluidState, c: float) -> float:
    """The constant S of the isentrope passing through ``state``."""
    g = state.gamma(c)
    return float(log_density_on_isentrope(g, 0.0, c)) - math.log(state.n)


def sound_speed_gap(state: FluidState, c: float) -> float:
    """h - n h'(n) along the isentrope through ``state``; depends on T only."""
    g = np.array([state.gamma(c)])
    h = c * c * (1.0 + ratio_k3_k2_minus_one(g))
    return float((h - _n_dh_dn_from_gamma(g, c))[0])


def newtonian_temperature(n0, n1=0.0, S: float = 0.0, order: int = 0):
    """Leading temperature T0(n0) or its first-order correction T1 = T0'(n0) n1."""
    k = np.exp((2.0 / 3.0) * S - 5.0 / 3.0)
    n0 = np.asarray(n0, dtype=float)
    if order == 0:
        return k * n0 ** (2.0 / 3.0) / (2.0 * np.pi)
    if order == 1:
        return k * n0 ** (-1.0 / 3.0) * np.asarray(n1, dtype=float) / (3.0 * np.pi)
    raise ValueError("order must be 0 or 1")


def polytropic_constant(S: float) -> float:
    """K in P = K rho^(5/3) for the classical limit of the isentrope."""
    return math.exp(-5.0 / 3.0 + (2.0 / 3.0) * S) / (2.0 * math.pi)


def maxwellian_radius(state: FluidState, c: float) -> float:
    """Radius of a ball around u holding the Maxwellian up to ~exp(-40).

    The slowest decay rate of exp(u^mu p_mu / T) along any ray from u is
    c^2 / ((u0 + |u|) T), which sets the second term.
    """
    speed = float(np.linalg.norm(state.u))
    return 12.0 * math.sqrt(state.T) + 40.0 * state.T * (state.u0(c) + speed) / (c * c)


def maxwellian_ball(
    state: FluidState, c: float, n_radial: int = 200, sphere: SphereQuadrature | None = None
) -> BallQuadrature:
    """Tensor rule centred on the peak p = u of the Maxwellian."""
    if sphere is None:
        axis = tuple(state.u) if np.any(state.u) else (0.0, 0.0, 1.0)
        sphere = product_rule(64, 128, axis=axis)
    return ball_rule(state.u, maxwellian_radius(state, c), n_radial, sphere)

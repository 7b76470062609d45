"""Relativistic characteristics in prescribed electromagnetic fields.

    dX/dtau = c P / P^0,    dP/dtau = -E(tau, X) - (P / P^0) x B(tau, X),

with X(t) = x, P(t) = p, integrated by classical RK4 with a fixed step. The
variational matrices J_X[i, j] = dX_j/dp_i and J_P[i, j] = dP_j/dp_i are
carried alongside.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

DEFAULT_STEPS = 2048


class IntegrationError(RuntimeError):
    pass


@dataclass(frozen=True)
class PhaseState:
    X: np.ndarray
    P: np.ndarray
    t: float


@dataclass(frozen=True)
class FieldSampler:
    """Prescribed fields with optional spatial gradients.

    Gradient callables return G[k, j] = d field_j / d x_k. When absent, central
    differences with step ``fd_step`` are used.
    """

    E: Callable[[float, np.ndarray], np.ndarray]
    B: Callable[[float, np.ndarray], np.ndarray]
    lipschitz: float = 0.0
    grad_E: Callable | None = None
    grad_B: Callable | None = None
    fd_step: float = 1e-6

    def gradient(self, which: str, t: float, x: np.ndarray) -> np.ndarray:
        analytic = self.grad_E if which == "E" else self.grad_B
        if analytic is not None:
            return np.asarray(analytic(t, x), dtype=float)
        f = self.E if which == "E" else self.B
        h = self.fd_step
        rows = [(np.asarray(f(t, x + h * e)) - np.asarray(f(t, x - h * e))) / (2 * h) for e in np.eye(3)]
        return np.array(rows)


def zero_fields() -> FieldSampler:
    z = lambda t, x: np.zeros(3)  # noqa: E731
    g = lambda t, x: np.zeros((3, 3))  # noqa: E731
    return FieldSampler(E=z, B=z, lipschitz=0.0, grad_E=g, grad_B=g)


@dataclass(frozen=True)
class Trajectory:
    tau: np.ndarray
    X: np.ndarray
    P: np.ndarray
    JX: np.ndarray | None = None
    JP: np.ndarray | None = None


def _velocity_jacobian(P: np.ndarray, JP: np.ndarray, c: float) -> np.ndarray:
    """d(P/P^0) with respect to p: rows i, columns j."""
    P0 = np.sqrt(c * c + P @ P)
    return (P0 * P0 * JP - np.outer(JP @ P, P)) / P0**3


def _rhs(tau, y, fields: FieldSampler, c: float, variational: bool):
    X, P = y[0:3], y[3:6]
    P0 = np.sqrt(c * c + P @ P)
    v = P / P0
    E = np.asarray(fields.E(tau, X), dtype=float)
    B = np.asarray(fields.B(tau, X), dtype=float)
    out = np.empty_like(y)
    out[0:3] = c * v
    out[3:6] = -E - np.cross(v, B)
    if variational:
        JX = y[6:15].reshape(3, 3)
        JP = y[15:24].reshape(3, 3)
        dv = _velocity_jacobian(P, JP, c)
        gE = fields.gradient("E", tau, X)
        gB = fields.gradient("B", tau, X)
        dE = JX @ gE
        dB = JX @ gB
        dJP = -dE - np.cross(v[None, :], dB) - np.cross(dv, B[None, :])
        out[6:15] = (c * dv).ravel()
        out[15:24] = dJP.ravel()
    return out


def _integrate(init: PhaseState, fields, tau_end: float, c: float, steps: int, variational: bool) -> Trajectory:
    if steps < 1:
        raise ValueError("need at least one step")
    y = np.concatenate([np.asarray(init.X, float), np.asarray(init.P, float)])
    if variational:
        y = np.concatenate([y, np.zeros(9), np.eye(3).ravel()])
    h = (tau_end - init.t) / steps
    taus = init.t + h * np.arange(steps + 1)
    ys = np.empty((steps + 1, y.size))
    ys[0] = y
    for k in range(steps):
        t = taus[k]
        k1 = _rhs(t, y, fields, c, variational)
        k2 = _rhs(t + h / 2, y + h / 2 * k1, fields, c, variational)
        k3 = _rhs(t + h / 2, y + h / 2 * k2, fields, c, variational)
        k4 = _rhs(t + h, y + h * k3, fields, c, variational)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(y)):
            raise IntegrationError(f"non-finite state after tau = {t}")
        ys[k + 1] = y
    traj = Trajectory(tau=taus, X=ys[:, 0:3], P=ys[:, 3:6])
    if variational:
        traj = Trajectory(
            tau=taus, X=traj.X, P=traj.P, JX=ys[:, 6:15].reshape(-1, 3, 3), JP=ys[:, 15:24].reshape(-1, 3, 3)
        )
    return traj


def integrate_characteristics(
    init: PhaseState, fields: FieldSampler, tau_end: float, c: float, steps: int = DEFAULT_STEPS
) -> Trajectory:
    """Trajectory from tau = init.t to ``tau_end`` (either direction)."""
    return _integrate(init, fields, tau_end, c, steps, False)


def variational_jacobian(
    init: PhaseState, fields: FieldSampler, tau_end: float, c: float, steps: int = DEFAULT_STEPS
) -> Trajectory:
    """Trajectory together with dX/dp and dP/dp."""
    return _integrate(init, fields, tau_end, c, steps, True)


def free_streaming_jacobian(p, tau: float, t: float, c: float) -> np.ndarray:
    """dX_j/dp_i = c (tau - t) ((p^0)^2 delta_ij - p_i p_j) / (p^0)^3 without fields."""
    p = np.asarray(p, dtype=float)
    p0 = np.sqrt(c * c + p @ p)
    return c * (tau - t) * (p0 * p0 * np.eye(3) - np.outer(p, p)) / p0**3


def free_streaming_determinant(p, tau: float, t: float, c: float) -> float:
    """c^5 |tau - t|^3 / (p^0)^5."""
    p = np.asarray(p, dtype=float)
    p0 = np.sqrt(c * c + p @ p)
    return c**5 * abs(tau - t) ** 3 / p0**5


def fd_position_jacobian(
    init: PhaseState, fields: FieldSampler, tau_end: float, c: float, steps: int = DEFAULT_STEPS, h: float = 1e-5
) -> np.ndarray:
    """dX(tau_end)/dp by central differences of the trajectory endpoint."""
    rows = []
    for e in np.eye(3):
        plus = integrate_characteristics(PhaseState(init.X, init.P + h * e, init.t), fields, tau_end, c, steps)
        minus = integrate_characteristics(PhaseState(init.X, init.P - h * e, init.t), fields, tau_end, c, steps)
        rows.append((plus.X[-1] - minus.X[-1]) / (2 * h))
    return np.array(rows)


def default_horizon(lipschitz: float) -> float:
    return 0.1 * min(1.0, 1.0 / lipschitz) if lipschitz > 0 else 0.1


def jacobian_bounds_check(
    fields: FieldSampler,
    c: float,
    samples: list[PhaseState],
    horizon: float | None = None,
    steps: int = 256,
) -> dict:
    """Measure the two-sided determinant bound along backward characteristics.

    For each sample the characteristic is followed back by ``horizon`` and the
    ratio det(dX/dp) / (c^5 |t - tau|^3 / (p^0)^5) is recorded at every step.
    The returned constant C = max(ratio_max, 1/ratio_min) is the multiplicative
    deviation from the free-streaming value, so C = 1 without fields and
        central / (2 C) <= |det| <= 2 C central
    holds with room to spare.
    """
    horizon = horizon if horizon is not None else default_horizon(fields.lipschitz)
    ratios = []
    min_energy_ratio = np.inf
    for s in samples:
        traj = variational_jacobian(s, fields, s.t - horizon, c, steps)
        p0 = np.sqrt(c * c + s.P @ s.P)
        dt = np.abs(traj.tau[1:] - s.t)
        dets = np.abs(np.linalg.det(traj.JX[1:]))
        ratios.append(dets / (c**5 * dt**3 / p0**5))
        P0 = np.sqrt(c * c + np.sum(traj.P**2, axis=1))
        min_energy_ratio = min(min_energy_ratio, float(np.min(P0 / p0)))
    ratios = np.concatenate(ratios)
    C = max(float(np.max(ratios)), 1.0 / float(np.min(ratios)))
    return {
        "ratio_min": float(np.min(ratios)),
        "ratio_max": float(np.max(ratios)),
        "C": C,
        "min_energy_ratio": min_energy_ratio,
        "horizon": horizon,
    }

"""Shared MUSCL / local Lax-Friedrichs / SSP-RK3 machinery on periodic 1D grids."""

from __future__ import annotations

from typing import Callable

import numpy as np

CFL = 0.4


class SolverError(RuntimeError):
    """Loss of admissibility (vacuum, superluminal speed, non-finite state)."""


class CFLViolation(ValueError):
    """Requested step exceeds the CFL bound."""


def _mc_slope(q: np.ndarray) -> np.ndarray:
    fwd = np.roll(q, -1, axis=-1) - q
    bwd = q - np.roll(q, 1, axis=-1)
    cen = 0.5 * (fwd + bwd)
    same = fwd * bwd > 0
    mag = np.minimum(np.minimum(2.0 * np.abs(fwd), 2.0 * np.abs(bwd)), np.abs(cen))
    return np.where(same, np.sign(cen) * mag, 0.0)


def _central_slope(q: np.ndarray) -> np.ndarray:
    return 0.5 * (np.roll(q, -1, axis=-1) - np.roll(q, 1, axis=-1))


SLOPES = {"mc": _mc_slope, "central": _central_slope}


def llf_divergence(
    q: np.ndarray,
    flux: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]],
    dx: float,
    limiter: str = "mc",
) -> np.ndarray:
    """-(F_{i+1/2} - F_{i-1/2}) / dx for conserved variables q of shape (m, N).

    ``flux(q)`` returns the physical flux (m, N) and the largest signal speed
    (N,) at every state it is handed.
    """
    slope = SLOPES[limiter](q)
    left = q + 0.5 * slope  # state just left of face i+1/2
    right = np.roll(q - 0.5 * slope, -1, axis=-1)  # state just right of face i+1/2
    fl, al = flux(left)
    fr, ar = flux(right)
    alpha = np.maximum(al, ar)
    face = 0.5 * (fl + fr) - 0.5 * alpha * (right - left)
    return -(face - np.roll(face, 1, axis=-1)) / dx


def ssp_rk3(q: np.ndarray, dt: float, rhs: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Shu-Osher third-order strong-stability-preserving Runge-Kutta step."""
    q1 = q + dt * rhs(q)
    q2 = 0.75 * q + 0.25 * (q1 + dt * rhs(q1))
    return q / 3.0 + 2.0 / 3.0 * (q2 + dt * rhs(q2))


def check_cfl(dt: float, dx: float, speed: float, cfl: float = CFL) -> None:
    limit = cfl * dx / speed if speed > 0 else np.inf
    if dt > limit * (1.0 + 1e-12):
        raise CFLViolation(f"dt = {dt:.3e} exceeds CFL limit {limit:.3e}")

"""Quadrature rules on the unit sphere and in momentum space."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import lebedev_rule

# scipy indexes Lebedev rules by odd degree of exactness; degrees 13, 25 and 27
# carry negative weights and are refused
DEFAULT_LEBEDEV_DEGREE = 29


@dataclass(frozen=True)
class SphereQuadrature:
    """Nodes (k, 3) on S^2 and positive weights summing to 4*pi."""

    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, values: np.ndarray) -> np.ndarray:
        """Contract the last axis of ``values`` against the weights."""
        return values @ self.weights

    def __len__(self) -> int:
        return len(self.weights)


@lru_cache(maxsize=None)
def lebedev(degree: int = DEFAULT_LEBEDEV_DEGREE) -> SphereQuadrature:
    x, w = lebedev_rule(degree)
    if np.any(w <= 0):
        raise ValueError(f"Lebedev rule of degree {degree} has non-positive weights")
    return SphereQuadrature(nodes=np.ascontiguousarray(x.T), weights=w)


def _frame(axis) -> np.ndarray:
    """Orthonormal rows (e1, e2, axis) with the given axis."""
    axis = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(axis)
    a = np.array([0.0, 0.0, 1.0]) if norm == 0 else axis / norm
    trial = np.array([1.0, 0.0, 0.0]) if abs(a[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = trial - a * (a @ trial)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(a, e1)
    return np.stack([e1, e2, a])


def _assemble(x: np.ndarray, wx: np.ndarray, n_phi: int, axis) -> SphereQuadrature:
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    s = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    local = np.stack(
        [
            (s[:, None] * np.cos(phi)[None, :]).ravel(),
            (s[:, None] * np.sin(phi)[None, :]).ravel(),
            np.repeat(x, n_phi),
        ],
        axis=1,
    )
    nodes = local @ _frame(axis)
    weights = np.repeat(wx, n_phi) * (2.0 * np.pi / n_phi)
    return SphereQuadrature(nodes=nodes, weights=weights)


@lru_cache(maxsize=64)
def _product_cached(n_theta: int, n_phi: int, axis: tuple, split: bool) -> SphereQuadrature:
    if split:
        t, w = np.polynomial.legendre.leggauss(n_theta)
        x = np.concatenate([(t - 1.0) / 2.0, (t + 1.0) / 2.0])
        wx = np.concatenate([w, w]) / 2.0
    else:
        x, wx = np.polynomial.legendre.leggauss(n_theta)
    return _assemble(x, wx, n_phi, axis)


def product_rule(n_theta: int = 64, n_phi: int = 128, axis=(0.0, 0.0, 1.0), split: bool = False) -> SphereQuadrature:
    """Gauss-Legendre in cos(theta) about ``axis`` times the trapezoid rule in phi.

    With ``split`` the cos(theta) interval is cut at 0 and each half gets
    ``n_theta`` nodes, which restores spectral accuracy for integrands with a
    kink on the equator such as |omega . axis|.
    """
    return _product_cached(int(n_theta), int(n_phi), tuple(float(a) for a in axis), bool(split))


def clustered_rule(axis, beta: float, n_theta: int = 96, n_phi: int = 16) -> SphereQuadrature:
    """Product rule for integrands built from powers of (1 + beta * omega.axis).

    Gauss-Legendre is applied in t = log(1 + beta x), which clusters nodes where
    the factor is small (beta close to 1). For beta < 1e-8 plain Gauss-Legendre
    is used.
    """
    if not 0.0 <= beta < 1.0:
        raise ValueError("beta must lie in [0, 1)")
    t, w = np.polynomial.legendre.leggauss(n_theta)
    if beta < 1e-8:
        x, wx = t, w
    else:
        lo, hi = np.log1p(-beta), np.log1p(beta)
        tt = 0.5 * (hi - lo) * t + 0.5 * (hi + lo)
        x = np.expm1(tt) / beta
        wx = w * 0.5 * (hi - lo) * np.exp(tt) / beta
    return _assemble(x, wx, n_phi, axis)


@dataclass(frozen=True)
class BallQuadrature:
    """Nodes (k, 3) and weights for integrals over a ball in momentum space."""

    nodes: np.ndarray
    weights: np.ndarray


def radial_gauss(n: int, radius: float) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [0, radius] including the r^2 Jacobian."""
    t, w = np.polynomial.legendre.leggauss(n)
    r = 0.5 * radius * (t + 1.0)
    return r, 0.5 * radius * w * r * r


def ball_rule(center, radius: float, n_radial: int = 200, sphere: SphereQuadrature | None = None) -> BallQuadrature:
    """Tensor rule on the ball of given radius around ``center``."""
    sphere = sphere if sphere is not None else product_rule()
    r, wr = radial_gauss(n_radial, radius)
    nodes = np.asarray(center, dtype=float) + (r[:, None, None] * sphere.nodes[None, :, :]).reshape(-1, 3)
    weights = (wr[:, None] * sphere.weights[None, :]).ravel()
    return BallQuadrature(nodes=nodes, weights=weights)


def truncation_radius(T: float, u) -> float:
    """Momentum cut-off 12 sqrt(T) + 12 |u| used for all Maxwellian integrals."""
    return 12.0 * np.sqrt(T) + 12.0 * float(np.linalg.norm(u))

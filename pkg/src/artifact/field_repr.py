"""Angular kernels of the retarded-time representation of field gradients.

With b = p / p^0 (so b = p_hat / c with p_hat = c p / p^0) and D = 1 + b . omega,
six kernels a_A, b_A, c_A, a_B, b_B, c_B depend on (omega, p, c) and two
indices. Component indices are 1-based, matching the usual (i, j) in {1, 2, 3}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import SphereQuadrature, clustered_rule, lebedev

KERNEL_NAMES = ("a_A", "b_A", "c_A", "a_B", "b_B", "c_B")
PRIMARY_LEBEDEV_DEGREE = 29
REFINE_TOL = 1e-10


@dataclass(frozen=True)
class AngularKernel:
    """All six kernels at fixed momentum ``p`` and light speed ``c``."""

    p: np.ndarray
    c: float

    def __post_init__(self):
        object.__setattr__(self, "p", np.asarray(self.p, dtype=float).reshape(3))
        if not self.c > 0:
            raise ValueError("c must be positive")

    @property
    def b(self) -> np.ndarray:
        return self.p / math.sqrt(self.c**2 + self.p @ self.p)

    def tensors(self, omega) -> dict[str, np.ndarray]:
        """Kernel values with shape (k, 3, 3); entry [.., i-1, j-1] is kernel (i, j)."""
        w = np.atleast_2d(np.asarray(omega, dtype=float))
        b = self.b
        bb = b @ b
        Q = 1.0 + (self.p @ self.p) / self.c**2
        D = 1.0 + w @ b
        D2 = D * D
        eye = np.eye(3)
        wb = w + b
        wxb = np.cross(w, b)
        # (e_j x b)_i as a matrix indexed [i, j]
        exb = np.cross(eye, b).T
        inner_a = w * (1.0 - bb) + b[None, :] * D[:, None]
        inner_b = 3.0 * w * (bb - 1.0) - 2.0 * b[None, :] * D[:, None]
        outer = lambda x, y: x[:, :, None] * y[:, None, :]  # noqa: E731
        d2 = D2[:, None, None]
        return {
            "a_A": (3.0 * outer(wb, inner_a) - d2 * eye) / (Q * (D2 * D2)[:, None, None]),
            "b_A": -(outer(wb, inner_b) + d2 * eye) / (D2 * D)[:, None, None],
            "c_A": outer(wb, w) / d2,
            "a_B": (-3.0 * outer(wxb, inner_a) + d2 * exb) / (Q * (D2 * D2)[:, None, None]),
            "b_B": (outer(wxb, inner_b) + d2 * exb) / (D2 * D)[:, None, None],
            "c_B": -outer(wxb, w) / d2,
        }


def eval_kernels(omega, p, c: float, i: int, j: int) -> tuple:
    """The six kernels (a_A, b_A, c_A, a_B, b_B, c_B) at one index pair.

    ``omega`` is a unit vector or an array (k, 3) of them; scalars are returned
    for a single direction.
    """
    if i not in (1, 2, 3) or j not in (1, 2, 3):
        raise ValueError("indices run over 1, 2, 3")
    w = np.asarray(omega, dtype=float)
    vals = AngularKernel(p, c).tensors(w)
    out = tuple(vals[name][:, i - 1, j - 1] for name in KERNEL_NAMES)
    if w.ndim == 1:
        return tuple(float(v[0]) for v in out)
    return out


def aligned_rule(p, c: float, n_theta: int = 96, n_phi: int = 16) -> SphereQuadrature:
    """Product rule about p with nodes clustered where 1 + b . omega is small.

    In the aligned frame the kernels are trigonometric polynomials of degree
    at most 2 in the azimuth, so a modest ``n_phi`` is exact.
    """
    p = np.asarray(p, dtype=float)
    beta = float(np.linalg.norm(p)) / math.sqrt(c * c + p @ p)
    axis = p if beta > 0 else (0.0, 0.0, 1.0)
    return clustered_rule(axis, beta, n_theta, n_phi)


def _integrate(kernel: AngularKernel, quad: SphereQuadrature, names) -> dict[str, np.ndarray]:
    vals = kernel.tensors(quad.nodes)
    return {k: np.tensordot(quad.weights, vals[k], axes=(0, 0)) for k in names}


def kernel_integrals(p, c: float, quad: SphereQuadrature | None = None, names=("a_A", "a_B")) -> dict:
    """3x3 matrices of angular integrals of the named kernels.

    Without an explicit rule the aligned clustered rule is refined until two
    successive levels agree to 1e-10 relative to the kernel scale.
    """
    kernel = AngularKernel(p, c)
    if quad is not None:
        return _integrate(kernel, quad, names)
    n = 96
    prev = _integrate(kernel, aligned_rule(p, c, n), names)
    for _ in range(4):
        n *= 2
        cur = _integrate(kernel, aligned_rule(p, c, n), names)
        scale = max(1.0, max(float(np.max(np.abs(cur[k]))) for k in names))
        if all(np.max(np.abs(cur[k] - prev[k])) <= REFINE_TOL * scale for k in names):
            return cur
        prev = cur
    return cur


def lebedev_cross_check(p, c: float, degree: int = PRIMARY_LEBEDEV_DEGREE) -> float:
    """Largest entrywise gap between Lebedev and aligned integrals of a_A and a_B."""
    ref = kernel_integrals(p, c)
    leb = kernel_integrals(p, c, lebedev(degree))
    return max(float(np.max(np.abs(ref[k] - leb[k]))) for k in ref)


def angular_null_check(p, c: float, quad: SphereQuadrature | None = None) -> tuple[np.ndarray, np.ndarray]:
    """(int a_A d omega, int a_B d omega) as 3x3 matrices; both vanish exactly."""
    out = kernel_integrals(p, c, quad)
    return out["a_A"], out["a_B"]


def reference_integrals(p, c: float, quad: SphereQuadrature | None = None) -> tuple[float, np.ndarray]:
    """I2 = int (sqrt(1+|p|^2/c^2) + p.omega/c)^-2 d omega and
    I3_j = int (sqrt(1+|p|^2/c^2) + p.omega/c)^-3 p_hat_j d omega.

    Closed forms: I2 = 4 pi and I3 = 4 pi p.
    """
    p = np.asarray(p, dtype=float)
    quad = quad if quad is not None else aligned_rule(p, c, 192)
    base = math.sqrt(1.0 + (p @ p) / c**2) + quad.nodes @ p / c
    phat = c * p / math.sqrt(c * c + p @ p)
    I2 = float(quad.integrate(base**-2))
    I3 = float(quad.integrate(base**-3)) * phat
    return I2, I3


def denominator_bound(p, c: float, m: float) -> float:
    """sup over omega of (1 + p_hat . omega / c)^-m = (p^0 (p^0 + |p|) / c^2)^m."""
    if m < 0:
        raise ValueError("m must be non-negative")
    p = np.asarray(p, dtype=float)
    pn = float(np.linalg.norm(p))
    p0 = math.sqrt(c * c + pn * pn)
    return (p0 * (p0 + pn) / c**2) ** m


def denominator_sup_direct(p, c: float, m: float, n: int = 4001) -> float:
    """Direct maximisation over a dense set of directions including -p/|p|."""
    p = np.asarray(p, dtype=float)
    b = p / math.sqrt(c * c + p @ p)
    bn = float(np.linalg.norm(b))
    x = np.linspace(-1.0, 1.0, n)
    return float(np.max((1.0 + bn * x) ** -m))


def kernel_sup(p, c: float, n_theta: int = 64, n_phi: int = 32) -> float:
    """max over omega and (i, j) of the sum of the six kernel magnitudes.

    The sample set is the aligned rule plus the antipodal point -p/|p|, where
    every denominator is smallest.
    """
    p = np.asarray(p, dtype=float)
    nodes = aligned_rule(p, c, n_theta, n_phi).nodes
    pn = np.linalg.norm(p)
    if pn > 0:
        nodes = np.vstack([nodes, -p / pn])
    vals = AngularKernel(p, c).tensors(nodes)
    total = sum(np.abs(vals[k]) for k in KERNEL_NAMES)
    return float(np.max(total))


def growth_exponent(c: float = 1.0, radii=tuple(range(1, 65))) -> tuple[float, np.ndarray]:
    """Least-squares slope of log kernel_sup against log(1 + |p|).

    Momenta point along a fixed generic direction. Returns (slope, sups).
    """
    direction = np.array([1.0, 2.0, 2.0]) / 3.0
    radii = np.asarray(radii, dtype=float)
    sups = np.array([kernel_sup(r * direction, c) for r in radii])
    slope = float(np.polyfit(np.log1p(radii), np.log(sups), 1)[0])
    return slope, sups

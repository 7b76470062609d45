"""Symmetric-hyperbolic coefficient matrices of the macroscopic relativistic system.

Unknowns are ordered (density slot, three momentum slots, energy slot).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..special_functions import ratio_k3_k2
from ..thermo import FluidState, energy, energy_density, juttner, maxwellian_ball, pressure


class AsymmetricMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class MacroMatrixSet:
    A0: np.ndarray
    A: np.ndarray  # (3, 5, 5)
    E0: np.ndarray
    B0: np.ndarray


def assemble_macro_matrices(state: FluidState, E0, B0, c: float) -> MacroMatrixSet:
    """A0 and A_i entrywise; h1 = n (6 K3 + gamma K2)/(gamma K2), h2 = n K3/(gamma K2).

    The field arguments do not enter A0 or A_i; they are kept with the set
    because the zeroth-order coupling matrix uses them.
    """
    n, u, T = state.n, state.u, state.T
    g = c * c / T
    r = float(ratio_k3_k2(g))
    h = c * c * r
    h1 = n * (6.0 * r + g) / g
    h2 = n * r / g
    e = energy_density(state, c)
    P = pressure(state, c)
    u0 = state.u0(c)
    uu = u @ u
    I3 = np.eye(3)

    A0 = np.empty((5, 5))
    A0[0, 0] = n * u0 / c
    A0[0, 1:4] = A0[1:4, 0] = n * u0 * h * u / c**3
    A0[0, 4] = A0[4, 0] = (e * u0**2 + P * uu) / c**4
    A0[1:4, 1:4] = (h1 / c * np.outer(u, u) + c * h2 * I3) * u0
    A0[1:4, 4] = A0[4, 1:4] = (h1 / c**2 * u0**2 - h2) * u
    A0[4, 4] = (h1 / c**3 * u0**2 - 3.0 * h2 / c) * u0

    A = np.empty((3, 5, 5))
    for i in range(3):
        ei = I3[i]
        At = np.outer(ei, u) + np.outer(u, ei)
        Ai = A[i]
        Ai[0, 0] = n * u[i]
        Ai[0, 1:4] = Ai[1:4, 0] = n * h * u[i] * u / c**2 + P * ei
        Ai[0, 4] = Ai[4, 0] = n * h * u0 * u[i] / c**3
        Ai[1:4, 1:4] = h1 * u[i] * np.outer(u, u) + c * c * h2 * (u[i] * I3 + At)
        Ai[1:4, 4] = Ai[4, 1:4] = (h1 / c * u[i] * u + c * h2 * ei) * u0
        Ai[4, 4] = (h1 / c**2 * u0**2 - h2) * u[i]
    for M in (A0, *A):
        if not np.array_equal(M, M.T):
            raise AsymmetricMatrixError("assembled matrix is not symmetric")
    return MacroMatrixSet(A0, A, np.asarray(E0, dtype=float), np.asarray(B0, dtype=float))


def positive_definiteness_check(A: np.ndarray, sym_tol: float = 1e-12) -> tuple[bool, np.ndarray]:
    """(verdict, leading principal minors).

    Minors are products of squared Cholesky pivots of the leading blocks, which
    stays accurate for the nearly singular blocks of the symmetrizer. The
    verdict is the success of the full factorisation.
    """
    A = np.asarray(A, dtype=float)
    scale = max(1.0, float(np.max(np.abs(A))))
    if np.max(np.abs(A - A.T)) > sym_tol * scale:
        raise AsymmetricMatrixError("matrix is not symmetric")
    minors = np.empty(len(A))
    ok = True
    for k in range(1, len(A) + 1):
        try:
            L = np.linalg.cholesky(A[:k, :k])
            minors[k - 1] = float(np.prod(np.diag(L)) ** 2)
        except np.linalg.LinAlgError:
            ok = False
            minors[k - 1] = float(np.linalg.det(A[:k, :k]))
    return ok, minors


def symmetrizer_by_quadrature(state: FluidState, c: float, n_radial: int = 200) -> np.ndarray:
    """int psi psi^T M dp with psi = (1, p, p^0 / c), which equals A0."""
    ball = maxwellian_ball(state, c, n_radial)
    p = ball.nodes
    psi = np.concatenate([np.ones((len(p), 1)), p, energy(p, c)[:, None] / c], axis=1)
    w = ball.weights * juttner(state, p, c)
    return np.einsum("ka,kb,k->ab", psi, psi, w)


def random_admissible_states(count: int, c: float, seed: int = 0) -> list[FluidState]:
    """n in [0.5, 2], T in [0.5, 2], |u| <= c/4 in a uniformly random direction."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        d = rng.normal(size=3)
        d /= np.linalg.norm(d)
        out.append(FluidState(rng.uniform(0.5, 2.0), d * rng.uniform(0.0, 0.25 * c), rng.uniform(0.5, 2.0)))
    return out

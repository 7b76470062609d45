"""Periodic grids, spectral derivatives and the electrostatic Poisson solve."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class GaugeError(ValueError):
    """Periodic Poisson data with non-zero total charge."""


@dataclass(frozen=True)
class Grid1D:
    """N uniform cells of width L/N; cell centres at (k + 1/2) dx."""

    N: int
    L: float = 2.0 * np.pi
    periodic: bool = True

    def __post_init__(self):
        if self.N < 8:
            raise ValueError("need at least 8 cells")
        if not self.L > 0:
            raise ValueError("domain length must be positive")

    @property
    def dx(self) -> float:
        return self.L / self.N

    @property
    def x(self) -> np.ndarray:
        return (np.arange(self.N) + 0.5) * self.dx

    @property
    def k(self) -> np.ndarray:
        return 2.0 * np.pi * np.fft.fftfreq(self.N, d=self.dx)

    def ddx(self, f: np.ndarray) -> np.ndarray:
        return np.real(np.fft.ifft(1j * self.k * np.fft.fft(f)))


@dataclass(frozen=True)
class Grid3DPeriodic:
    """N^3 nodes on [0, 2 pi)^3 with integer wave numbers."""

    N: int

    def __post_init__(self):
        if self.N < 8:
            raise ValueError("need at least 8 nodes per direction")

    @property
    def axes(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.N) / self.N

    def mesh(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return np.meshgrid(self.axes, self.axes, self.axes, indexing="ij")

    def wavenumbers(self) -> np.ndarray:
        """Array (3, N, N, N) of integer wave vectors."""
        k = np.fft.fftfreq(self.N, d=1.0 / self.N)
        return np.array(np.meshgrid(k, k, k, indexing="ij"))

    # spectral calculus; vector fields have a leading axis of length 3

    def fft(self, f):
        return np.fft.fftn(f, axes=(-3, -2, -1))

    def ifft(self, f):
        return np.real(np.fft.ifftn(f, axes=(-3, -2, -1)))

    def grad(self, f: np.ndarray) -> np.ndarray:
        return self.ifft(1j * self.wavenumbers() * self.fft(f)[None])

    def div(self, v: np.ndarray) -> np.ndarray:
        return self.ifft(np.sum(1j * self.wavenumbers() * self.fft(v), axis=0))

    def curl(self, v: np.ndarray) -> np.ndarray:
        return self.ifft(np.cross(1j * self.wavenumbers(), self.fft(v), axis=0))

    def inverse_laplacian(self, f: np.ndarray) -> np.ndarray:
        """Mean-zero solution of Delta u = f - mean(f)."""
        k = self.wavenumbers()
        k2 = np.sum(k * k, axis=0)
        k2[0, 0, 0] = 1.0
        fh = self.fft(f)
        uh = -fh / k2
        uh[..., 0, 0, 0] = 0.0
        return self.ifft(uh)

    def gradient_part(self, v: np.ndarray) -> np.ndarray:
        """Curl-free part of v with the mean removed."""
        return self.grad(self.inverse_laplacian(self.div(v)))

    def solenoidal_part(self, v: np.ndarray) -> np.ndarray:
        """Divergence-free part of v with the mean removed."""
        mean = v.mean(axis=(-3, -2, -1), keepdims=True)
        return v - mean - self.gradient_part(v)

    def dot(self, a: np.ndarray, b: np.ndarray) -> float:
        """Normalised L2 pairing: mean over the torus of a . b."""
        return float(np.mean(np.sum(a * b, axis=0)))


def _check_neutral(rho, rho_bar, tol):
    excess = float(np.mean(np.asarray(rho) - rho_bar))
    if abs(excess) > tol * max(1.0, abs(rho_bar)):
        raise GaugeError(f"net charge {excess:.3e} on a periodic domain")


def poisson_solve(rho: np.ndarray, rho_bar: float, grid, tol: float = 1e-10) -> np.ndarray:
    """Mean-zero phi with Delta phi = 4 pi (rho_bar - rho) on a periodic grid."""
    _check_neutral(rho, rho_bar, tol)
    if isinstance(grid, Grid1D):
        k = grid.k
        k2 = k * k
        k2[0] = 1.0
        ph = -4.0 * np.pi * np.fft.fft(rho_bar - rho) / k2
        ph[0] = 0.0
        return np.real(np.fft.ifft(ph))
    return grid.inverse_laplacian(4.0 * np.pi * (rho_bar - rho))


def gauss_field_1d(rho: np.ndarray, rho_bar: float, grid: Grid1D, tol: float = 1e-10) -> np.ndarray:
    """Mean-zero E with dE/dx = 4 pi (rho_bar - rho), i.e. E = d phi / dx."""
    return grid.ddx(poisson_solve(rho, rho_bar, grid, tol))

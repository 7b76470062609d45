"""Modified Bessel functions of the second kind and their large-argument series.

Values come from adaptive quadrature of the integral representation

    K_j(z) = (z/2)^j sqrt(pi) / Gamma(j + 1/2) * int_1^inf exp(-z t) (t^2 - 1)^(j - 1/2) dt.

Hot paths that need many evaluations (fluid closures, quadrature oracles) use
the vectorised ratio helpers at the bottom of the module, which are backed by
``scipy.special.kve``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

ASYMPTOTIC_SWITCH = 700.0
_VMAX = 14.0


@dataclass(frozen=True)
class BesselValue:
    """A Bessel function value with an error estimate.

    ``scaled`` is ``value * exp(z)`` and stays finite where ``value`` underflows.
    """

    value: float
    estimated_abs_error: float
    scaled: float


@dataclass(frozen=True)
class BesselSeries:
    order: int
    coefficients: np.ndarray
    truncation: int


def _check_args(j: int, z: float) -> None:
    if int(j) != j or j < 0:
        raise ValueError(f"order must be a non-negative integer, got {j!r}")
    if not np.isfinite(z) or z <= 0:
        raise ValueError(f"argument must be positive and finite, got {z!r}")


def asymptotic_coefficients(j: int, n: int) -> np.ndarray:
    """Return A_{j,0}, ..., A_{j,n} of the large-z expansion of K_j."""
    coeffs = np.empty(n + 1)
    coeffs[0] = 1.0
    mu = 4.0 * j * j
    for m in range(1, n + 1):
        coeffs[m] = coeffs[m - 1] * (mu - (2 * m - 1) ** 2) / (8.0 * m)
    return coeffs


def bessel_series(j: int, n: int) -> BesselSeries:
    _check_args(j, 1.0)
    if n < 1:
        raise ValueError("truncation must be >= 1")
    return BesselSeries(order=int(j), coefficients=asymptotic_coefficients(j, n), truncation=n)


def _quadrature_scaled(j: int, z: float) -> tuple[float, float]:
    # t = 1 + v^2/z removes both the endpoint singularity and the exp(-z) factor
    pref = 2.0 ** (1 - j) * math.sqrt(math.pi) / math.gamma(j + 0.5) / math.sqrt(z)

    def integrand(v: float) -> float:
        return math.exp(-v * v) * v ** (2 * j) * (2.0 + v * v / z) ** (j - 0.5)

    val, err = integrate.quad(integrand, 0.0, _VMAX, epsabs=0.0, epsrel=1e-13, limit=200)
    return pref * val, pref * err


def bessel_k_asymptotic(j: int, z: float, n: int) -> BesselValue:
    """Truncated large-argument expansion of K_j(z) with its remainder bound.

    The sum keeps the terms m < n. The bound is 2|A_{j,n}| exp((j^2 - 1/4)/z) z^-n
    times the prefactor, tightened to |A_{j,n}| z^-n when j <= n + 1/2.
    """
    _check_args(j, z)
    if n < 1:
        raise ValueError("truncation must be >= 1")
    coeffs = asymptotic_coefficients(j, n)
    powers = z ** -np.arange(n + 1, dtype=float)
    prefactor = math.sqrt(math.pi / (2.0 * z))
    scaled = prefactor * float(np.dot(coeffs[:n], powers[:n]))
    tail = abs(coeffs[n]) * powers[n]
    if j > n + 0.5:
        tail *= 2.0 * math.exp((j * j - 0.25) / z)
    decay = math.exp(-z)
    return BesselValue(value=scaled * decay, estimated_abs_error=prefactor * tail * decay, scaled=scaled)


def bessel_k(j: int, z: float) -> BesselValue:
    """K_j(z) by adaptive quadrature of the integral representation.

    Above ``ASYMPTOTIC_SWITCH`` the five-term expansion is returned instead so
    that the scaled value survives the underflow of exp(-z).
    """
    _check_args(j, z)
    if z > ASYMPTOTIC_SWITCH:
        return bessel_k_asymptotic(j, z, 5)
    scaled, err = _quadrature_scaled(j, z)
    decay = math.exp(-z)
    err = err + 4.0 * np.finfo(float).eps * abs(scaled)
    return BesselValue(value=scaled * decay, estimated_abs_error=err * decay, scaled=scaled)


def bessel_ratio(z: float, upper: int = 3, lower: int = 2) -> float:
    """K_upper(z)/K_lower(z) from quadrature values, formed from scaled values."""
    num = bessel_k(upper, z).scaled
    den = bessel_k(lower, z).scaled
    return math.exp(math.log(num) - math.log(den))


def bessel_identity_suite(z_samples, step: float = 1e-3) -> dict:
    """Check recurrence, derivative and monotonicity identities on ``z_samples``.

    Residuals are relative. The derivative identity d/dz(K_j/z^j) = -K_{j+1}/z^j
    is checked with a five-point central difference of spacing ``step``.
    """
    rec, der, mono = 0.0, 0.0, True
    for z in z_samples:
        z = float(z)
        if z <= 2 * step:
            raise ValueError("sample too close to zero for the difference stencil")
        k = [bessel_k(j, z).scaled for j in range(5)]
        for j in (1, 2, 3):
            res = abs(k[j + 1] - (2 * j / z) * k[j] - k[j - 1]) / k[j + 1]
            rec = max(rec, res)
        mono = mono and all(k[j] < k[j + 1] for j in range(4))
        for j in (1, 2, 3):
            # exp(-z) is kept out of the stencil to allow the full sampled range
            def f(x, j=j):
                return bessel_k(j, x).scaled * math.exp(z - x) / x**j

            fd = (-f(z + 2 * step) + 8 * f(z + step) - 8 * f(z - step) + f(z - 2 * step)) / (12 * step)
            exact = -k[j + 1] / z**j
            der = max(der, abs(fd - exact) / abs(exact))
    return {"recurrence": rec, "derivative": der, "monotone": mono}


# vectorised helpers -------------------------------------------------------

_RATIO_SERIES_MIN = 40.0
_RATIO_SERIES_TERMS = 24


def _ratio_series(z: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """s = K3/K2 - 1 and its derivative from the large-z series, no cancellation."""
    a2 = asymptotic_coefficients(2, _RATIO_SERIES_TERMS)
    a3 = asymptotic_coefficients(3, _RATIO_SERIES_TERMS)
    m = np.arange(_RATIO_SERIES_TERMS + 1)
    zp = z[..., None] ** -m
    den = zp @ a2
    num = zp @ (a3 - a2)
    dden = (zp @ (-m * a2)) / z
    dnum = (zp @ (-m * (a3 - a2))) / z
    s = num / den
    ds = (dnum * den - num * dden) / den**2
    return s, ds, den


def ratio_k3_k2(z) -> np.ndarray:
    """K3(z)/K2(z), vectorised."""
    z = np.asarray(z, dtype=float)
    return special.kve(3, z) / special.kve(2, z)


def ratio_k3_k2_minus_one(z) -> np.ndarray:
    """K3(z)/K2(z) - 1 without cancellation at large z."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    big = z >= _RATIO_SERIES_MIN
    if np.any(big):
        out[big] = _ratio_series(z[big])[0]
    small = ~big
    if np.any(small):
        out[small] = ratio_k3_k2(z[small]) - 1.0
    return out


def ratio_k3_k2_derivative(z) -> np.ndarray:
    """d/dz (K3/K2) = r^2 - 5r/z - 1, evaluated from the series when z is large."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    big = z >= _RATIO_SERIES_MIN
    if np.any(big):
        out[big] = _ratio_series(z[big])[1]
    small = ~big
    if np.any(small):
        r = ratio_k3_k2(z[small])
        out[small] = r * r - 5.0 * r / z[small] - 1.0
    return out


def log_kve2(z) -> np.ndarray:
    """log(K2(z) e^z), vectorised."""
    z = np.asarray(z, dtype=float)
    return np.log(special.kve(2, z))

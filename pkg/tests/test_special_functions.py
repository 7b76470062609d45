import math

import numpy as np
import pytest
from scipy import special

from artifact import special_functions as sf


@pytest.mark.parametrize("j", [0, 1, 2, 3, 4])
@pytest.mark.parametrize("z", [0.5, 1.0, 7.3, 50.0, 400.0])
def test_quadrature_matches_scipy(j, z):
    val = sf.bessel_k(j, z)
    assert val.scaled == pytest.approx(special.kve(j, z), rel=1e-12)
    assert val.estimated_abs_error >= 0


def test_large_argument_uses_series_without_underflow():
    val = sf.bessel_k(2, 1e4)
    assert val.value == 0.0
    assert val.scaled == pytest.approx(special.kve(2, 1e4), rel=1e-12)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        sf.bessel_k(-1, 1.0)
    with pytest.raises(ValueError):
        sf.bessel_k(1.5, 1.0)
    with pytest.raises(ValueError):
        sf.bessel_k(1, 0.0)
    with pytest.raises(ValueError):
        sf.bessel_k(1, np.inf)


def test_half_integer_like_coefficients():
    # A_{j,m} vanishes beyond m = j for the order-1/2 analogue; check the first terms for j = 2
    a = sf.asymptotic_coefficients(2, 3)
    assert a[0] == 1.0
    assert a[1] == pytest.approx(15.0 / 8.0)
    assert a[2] == pytest.approx(15.0 * 7.0 / 128.0)


def test_series_remainder_within_bound():
    for j in range(4):
        for n in (1, 3, 5):
            for z in (10.0, 100.0):
                s = sf.bessel_k_asymptotic(j, z, n)
                exact = special.kve(j, z)
                assert abs(s.scaled - exact) <= s.estimated_abs_error * math.exp(z) * (1 + 1e-10)


def test_bessel_series_validation():
    assert sf.bessel_series(2, 4).coefficients.shape == (5,)
    with pytest.raises(ValueError):
        sf.bessel_series(2, 0)


def test_identity_suite_small_sample():
    out = sf.bessel_identity_suite([0.7, 3.0, 30.0])
    assert out["recurrence"] < 1e-12
    assert out["derivative"] < 1e-7
    assert out["monotone"]


def test_ratio_helpers_agree_with_quadrature():
    z = np.array([0.3, 2.0, 39.0, 41.0, 300.0, 1e5])
    ref = np.array([sf.bessel_ratio(float(x)) for x in z])
    assert np.allclose(sf.ratio_k3_k2(z), ref, rtol=1e-12, atol=0)
    assert np.allclose(sf.ratio_k3_k2_minus_one(z), ref - 1.0, rtol=1e-9, atol=1e-15)


def test_ratio_derivative_by_differences():
    for z in (0.8, 10.0, 39.9, 40.1, 500.0):
        h = 1e-4 * z
        fd = (sf.ratio_k3_k2_minus_one(z + h) - sf.ratio_k3_k2_minus_one(z - h)) / (2 * h)
        assert sf.ratio_k3_k2_derivative(z) == pytest.approx(fd, rel=1e-6)


def test_log_kve2():
    z = np.array([0.1, 5.0, 800.0])
    assert np.allclose(sf.log_kve2(z), np.log(special.kve(2, z)), rtol=1e-13)

import numpy as np
import pytest

from artifact import field_repr as fr
from artifact.harness import checks


def _unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def test_kernels_at_rest_momentum():
    # p = 0: b = 0, D = 1, Q = 1
    w = _unit([1.0, 2.0, 2.0])
    aA, bA, cA, aB, bB, cB = fr.eval_kernels(w, np.zeros(3), 1.0, 1, 2)
    assert aA == pytest.approx(3 * w[0] * w[1])
    assert bA == pytest.approx(3 * w[0] * w[1])
    assert cA == pytest.approx(w[0] * w[1])
    assert aB == bB == cB == 0.0
    diag = fr.eval_kernels(w, np.zeros(3), 1.0, 3, 3)
    assert diag[0] == pytest.approx(3 * w[2] ** 2 - 1)
    assert diag[1] == pytest.approx(3 * w[2] ** 2 - 1)


def test_magnetic_kernels_vanish_along_momentum():
    p = np.array([0.0, 0.0, 2.0])
    vals = fr.AngularKernel(p, 1.0).tensors(np.array([[0.0, 0.0, 1.0]]))
    # omega parallel to b kills omega x b; the remaining term is (e_j x b)_i, zero in column 3
    assert np.allclose(vals["a_B"][0][:, 2], 0.0)
    assert np.allclose(vals["c_B"], 0.0)


def test_indices_validated():
    with pytest.raises(ValueError):
        fr.eval_kernels([0, 0, 1.0], np.zeros(3), 1.0, 0, 1)


def test_nonpositive_light_speed_rejected():
    with pytest.raises(ValueError):
        fr.AngularKernel(np.zeros(3), 0.0)


def test_batched_evaluation_matches_single():
    p = np.array([0.3, -0.5, 1.0])
    ws = np.array([_unit([1, 0, 0]), _unit([0.2, 1, -0.3])])
    batch = fr.eval_kernels(ws, p, 2.0, 2, 3)
    for k, w in enumerate(ws):
        single = fr.eval_kernels(w, p, 2.0, 2, 3)
        assert np.allclose([b[k] for b in batch], single)


@pytest.mark.parametrize("scale", [0.0, 0.5, 5.0, 50.0])
def test_angular_null_integrals(scale):
    p = scale * _unit([1.0, -2.0, 0.5])
    A, B = fr.angular_null_check(p, 1.0)
    assert np.max(np.abs(A)) < 1e-8
    assert np.max(np.abs(B)) < 1e-8


def test_lebedev_agrees_for_moderate_momentum():
    assert fr.lebedev_cross_check(np.array([0.1, 0.2, 0.0]), 1.0) < 1e-8


@pytest.mark.parametrize("scale", [0.0, 1.0, 20.0])
def test_reference_integrals(scale):
    p = scale * _unit([0.3, 0.4, -1.0])
    I2, I3 = fr.reference_integrals(p, 1.0)
    assert I2 == pytest.approx(4 * np.pi, rel=1e-10)
    assert np.allclose(I3, 4 * np.pi * p, rtol=1e-10, atol=1e-12)


def test_denominator_bound_matches_direct():
    for m in (1.0, 2.0, 3.5):
        p = np.array([3.0, 0.0, 4.0])
        assert fr.denominator_bound(p, 2.0, m) == pytest.approx(fr.denominator_sup_direct(p, 2.0, m), rel=1e-10)
    with pytest.raises(ValueError):
        fr.denominator_bound(p, 1.0, -1.0)


def test_growth_exponent_is_polynomial():
    slope, sups = fr.growth_exponent(1.0, radii=(1, 2, 4, 8, 16, 32))
    assert np.all(np.diff(sups) > 0)
    assert 0 < slope < 8


def test_null_check_detects_sign_error(monkeypatch):
    original = fr.AngularKernel.tensors

    def flipped(self, omega):
        out = original(self, omega)
        w = np.atleast_2d(omega)
        D2 = (1.0 + w @ self.b) ** 2
        Q = 1.0 + (self.p @ self.p) / self.c**2
        # reverse the sign of the delta term in a_A
        out["a_A"] = out["a_A"] + 2.0 * (D2[:, None, None] * np.eye(3)) / (Q * (D2 * D2)[:, None, None])
        return out

    monkeypatch.setattr(fr.AngularKernel, "tensors", flipped)
    results = {r.name: r for r in checks.check_field_kernels(samples=3)}
    assert not results["angular-null-aA"].passed

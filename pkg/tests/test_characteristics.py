import numpy as np
import pytest

from artifact import characteristics as ch
from artifact.harness.checks import smooth_fields


def test_free_streaming_trajectory():
    c = 3.0
    init = ch.PhaseState(np.array([0.1, 0.2, 0.3]), np.array([1.0, -2.0, 0.5]), 1.0)
    traj = ch.integrate_characteristics(init, ch.zero_fields(), 0.0, c, steps=16)
    p0 = np.sqrt(c * c + init.P @ init.P)
    assert np.allclose(traj.X[-1], init.X - c * init.P / p0, atol=1e-14)
    assert np.allclose(traj.P, init.P)


def test_free_streaming_jacobian_and_determinant():
    c, p = 2.0, np.array([0.3, 1.5, -0.7])
    init = ch.PhaseState(np.zeros(3), p, 2.0)
    traj = ch.variational_jacobian(init, ch.zero_fields(), 0.5, c, steps=32)
    J = ch.free_streaming_jacobian(p, 0.5, 2.0, c)
    assert np.allclose(traj.JX[-1], J, atol=1e-13)
    assert abs(np.linalg.det(J)) == pytest.approx(ch.free_streaming_determinant(p, 0.5, 2.0, c), rel=1e-12)


def test_variational_matches_finite_differences():
    fields = smooth_fields()
    init = ch.PhaseState(np.array([0.5, -0.2, 1.0]), np.array([1.0, 0.4, -0.8]), 0.5)
    traj = ch.variational_jacobian(init, fields, 0.0, 2.0, steps=128)
    fd = ch.fd_position_jacobian(init, fields, 0.0, 2.0, steps=128)
    assert np.max(np.abs(traj.JX[-1] - fd)) < 1e-6 * np.max(np.abs(fd))


def test_finite_difference_gradients_used_when_absent():
    f = smooth_fields()
    bare = ch.FieldSampler(E=f.E, B=f.B, lipschitz=1.0)
    x = np.array([0.3, 1.1, -0.4])
    assert np.allclose(bare.gradient("E", 0.2, x), f.gradient("E", 0.2, x), atol=1e-8)
    assert np.allclose(bare.gradient("B", 0.2, x), f.gradient("B", 0.2, x), atol=1e-8)


def test_energy_changes_only_through_electric_field():
    # pure magnetic field conserves |P|
    z = lambda t, x: np.zeros(3)  # noqa: E731
    B = lambda t, x: np.array([0.0, 0.0, 2.0])  # noqa: E731
    fields = ch.FieldSampler(E=z, B=B)
    init = ch.PhaseState(np.zeros(3), np.array([1.0, 0.5, 0.2]), 0.0)
    traj = ch.integrate_characteristics(init, fields, -1.0, 1.0, steps=400)
    norms = np.linalg.norm(traj.P, axis=1)
    assert np.max(np.abs(norms - norms[0])) < 1e-8


def test_jacobian_bound_without_fields_is_exact():
    samples = [ch.PhaseState(np.zeros(3), np.array([0.5, 1.0, -1.0]), 1.0)]
    out = ch.jacobian_bounds_check(ch.zero_fields(), 5.0, samples, steps=32)
    assert out["C"] == pytest.approx(1.0, abs=1e-10)


def test_jacobian_bound_with_fields():
    rng = np.random.default_rng(1)
    samples = [ch.PhaseState(rng.normal(size=3), 3 * rng.normal(size=3), 1.0) for _ in range(4)]
    out = ch.jacobian_bounds_check(smooth_fields(), 10.0, samples, steps=64)
    assert 1.0 <= out["C"] < 4.0
    assert out["horizon"] == pytest.approx(0.1)


def test_default_horizon():
    assert ch.default_horizon(0.0) == pytest.approx(0.1)
    assert ch.default_horizon(5.0) == pytest.approx(0.02)


def test_rejects_zero_steps():
    init = ch.PhaseState(np.zeros(3), np.ones(3), 0.0)
    with pytest.raises(ValueError):
        ch.integrate_characteristics(init, ch.zero_fields(), 1.0, 1.0, steps=0)


def test_nonfinite_fields_raise():
    bad = ch.FieldSampler(E=lambda t, x: np.full(3, np.nan), B=lambda t, x: np.zeros(3))
    with pytest.raises(ch.IntegrationError):
        ch.integrate_characteristics(ch.PhaseState(np.zeros(3), np.ones(3), 0.0), bad, 1.0, 1.0, steps=4)

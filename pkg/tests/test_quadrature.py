from math import gamma

import numpy as np
import pytest

from artifact import quadrature as q


@pytest.mark.parametrize("degree", [11, 17, 29, 41])
def test_lebedev_weights_sum(degree):
    rule = q.lebedev(degree)
    assert rule.weights.sum() == pytest.approx(4 * np.pi, abs=1e-13)
    assert np.allclose(np.linalg.norm(rule.nodes, axis=1), 1.0)
    assert np.all(rule.weights > 0)


def test_lebedev_integrates_polynomials():
    rule = q.lebedev(29)
    x, y, z = rule.nodes.T
    # int x^2a y^2b z^2c = 2 G(a+1/2) G(b+1/2) G(c+1/2) / G(a+b+c+3/2)
    exact = 2 * gamma(1.5) * gamma(2.5) * gamma(3.5) / gamma(7.5)
    assert rule.integrate(x**2 * y**4 * z**6) == pytest.approx(exact, rel=1e-12)
    assert abs(rule.integrate(x**3 * y)) < 1e-14


def test_product_rule_axis_and_split():
    rule = q.product_rule(16, 32, axis=(1.0, 1.0, 0.0))
    assert rule.weights.sum() == pytest.approx(4 * np.pi, abs=1e-12)
    a = np.array([1.0, 1.0, 0.0]) / np.sqrt(2)
    split = q.product_rule(16, 8, axis=tuple(a), split=True)
    # int |omega . a| = 2 pi
    assert split.integrate(np.abs(split.nodes @ a)) == pytest.approx(2 * np.pi, rel=1e-13)


def test_clustered_rule_near_light_speed():
    beta = 0.999
    rule = q.clustered_rule((0, 0, 1), beta, n_theta=96, n_phi=4)
    x = rule.nodes[:, 2]
    # int (1 + beta x)^-2 = 4 pi / (1 - beta^2)
    assert rule.integrate((1 + beta * x) ** -2) == pytest.approx(4 * np.pi / (1 - beta**2), rel=1e-12)
    with pytest.raises(ValueError):
        q.clustered_rule((0, 0, 1), 1.0)


def test_ball_rule_volume():
    ball = q.ball_rule([1.0, 2.0, 3.0], 2.0, 20, q.lebedev(11))
    assert ball.weights.sum() == pytest.approx(4 / 3 * np.pi * 8, rel=1e-12)
    assert np.max(np.linalg.norm(ball.nodes - [1, 2, 3], axis=1)) < 2.0


def test_truncation_radius():
    assert q.truncation_radius(4.0, [3.0, 4.0, 0.0]) == pytest.approx(24 + 60)


def test_lebedev_refuses_negative_weights():
    with pytest.raises(ValueError):
        q.lebedev(27)

import math

import numpy as np
import pytest

from artifact import thermo as th
from artifact.quadrature import product_rule


def test_fluid_state_validation():
    with pytest.raises(ValueError):
        th.FluidState(0.0)
    with pytest.raises(ValueError):
        th.FluidState(1.0, T=-1.0)
    st = th.FluidState(2.0, [3.0, 0.0, 4.0], 0.5)
    assert st.u0(10.0) == pytest.approx(math.sqrt(125.0))
    assert st.gamma(10.0) == pytest.approx(200.0)


def test_global_params_validation():
    with pytest.raises(ValueError):
        th.GlobalMaxwellianParams(1.0, 1.0, alpha=0.4)
    params = th.GlobalMaxwellianParams(1.0, 1.0)
    assert params.envelopes(th.FluidState(1.5, T=1.5))
    assert not params.envelopes(th.FluidState(2.5, T=1.5))


@pytest.mark.parametrize("c", [1.0, 10.0, 300.0])
def test_juttner_normalisation(c):
    st = th.FluidState(1.7, [0.2 * c, 0.0, 0.1 * c], 0.8)
    ball = th.maxwellian_ball(st, c, 120, product_rule(48, 96, axis=tuple(st.u)))
    mass = np.sum(ball.weights * th.juttner(st, ball.nodes, c))
    # int M dp = n u^0 / c
    assert mass == pytest.approx(st.n * st.u0(c) / c, rel=1e-10)


def test_juttner_rejects_nonfinite_momentum():
    with pytest.raises(ValueError):
        th.juttner(th.FluidState(1.0), np.array([np.nan, 0, 0]), 1.0)


def test_global_maxwellian_is_rest_juttner():
    params = th.GlobalMaxwellianParams(1.2, 0.7)
    p = np.array([[0.3, -0.2, 1.0], [2.0, 0.0, 0.0]])
    assert np.allclose(th.global_maxwellian(params, p, 5.0), th.juttner(th.FluidState(1.2, T=0.7), p, 5.0))


def test_energy_density_forms_and_unknown_form():
    st = th.FluidState(1.3, T=2.0)
    assert th.energy_density(st, 3.0, "K3") == pytest.approx(th.energy_density(st, 3.0, "K1"), rel=1e-13)
    with pytest.raises(ValueError):
        th.energy_density(st, 3.0, "K7")


def test_enthalpy_nonrelativistic_limit():
    st = th.FluidState(1.0, T=1.0)
    c = 1e3
    assert th.enthalpy(st, c) - c * c == pytest.approx(2.5, rel=1e-4)


def test_temperature_roundtrip_and_bracket_error():
    T = th.solve_temperature(0.8, 1.0, 7.0)
    assert float(th.density_on_isentrope(T, 1.0, 7.0)) == pytest.approx(0.8, rel=1e-13)
    with pytest.raises(th.RootNotBracketedError):
        th.solve_temperature(0.8, 1.0, 7.0, bracket=(1e3, 1e4))
    with pytest.raises(ValueError):
        th.solve_temperature(-1.0, 1.0, 7.0)


def test_vectorised_isentrope_matches_scalar():
    n = np.array([0.1, 1.0, 30.0])
    g = th.isentrope_gamma(n, 0.5, 4.0)
    T = [th.solve_temperature(x, 0.5, 4.0) for x in n]
    assert np.allclose(16.0 / g, T, rtol=1e-12)


def test_entropy_of_inverts_isentrope():
    st = th.FluidState(2.0, T=0.3)
    S = th.entropy_of(st, 5.0)
    assert th.solve_temperature(2.0, S, 5.0) == pytest.approx(0.3, rel=1e-12)


def test_sound_speed_gap_depends_on_temperature_only():
    a = th.sound_speed_gap(th.FluidState(1.0, T=1.0), 20.0)
    b = th.sound_speed_gap(th.FluidState(5.0, T=1.0), 20.0)
    assert a == pytest.approx(b, rel=1e-14)
    assert a > 0


def test_newtonian_temperature_formulas():
    S = 0.7
    n0, n1 = 1.4, 0.3
    T0 = th.newtonian_temperature(n0, S=S)
    h = 1e-6
    d = (th.newtonian_temperature(n0 + h, S=S) - th.newtonian_temperature(n0 - h, S=S)) / (2 * h)
    assert th.newtonian_temperature(n0, n1, S, order=1) == pytest.approx(d * n1, rel=1e-8)
    assert T0 == pytest.approx(th.polytropic_constant(S) * n0 ** (2 / 3))
    with pytest.raises(ValueError):
        th.newtonian_temperature(n0, order=2)

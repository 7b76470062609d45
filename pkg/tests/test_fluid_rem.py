import numpy as np
import pytest

from artifact import thermo as th
from artifact.fluid import rem
from artifact.fluid.finite_volume import SolverError
from artifact.fluid.grids import Grid1D


def test_constant_slab_is_fixed():
    g = Grid1D(64)
    st = rem.rem_state(np.ones(64), np.zeros(64), g, 20.0, 2.0)
    st = rem.rem_step_1d(st, 0.01)
    assert np.max(np.abs(st.n - 1.0)) < 1e-12
    assert np.max(np.abs(st.u)) < 1e-12
    assert np.all(st.B == 0)


def test_primitive_recovery_roundtrip():
    g = Grid1D(32)
    c, S = 5.0, 1.5
    st = rem.rem_state(1.0 + 0.3 * np.cos(g.x), 0.8 * np.sin(g.x), g, c, S)
    n, u, _ = rem.recover_primitives(rem.conserved(st), S, c)
    assert np.allclose(n, st.n, rtol=1e-12)
    assert np.allclose(u, st.u, rtol=1e-12, atol=1e-13)


def test_recovery_rejects_nonpositive_density():
    with pytest.raises(SolverError):
        rem.recover_primitives(np.array([[-1.0], [0.0]]), 1.0, 1.0)


def test_closure_classical_limit():
    c, S, n = 200.0, 2.0, np.array([0.5, 1.0, 2.0])
    cl = rem.closure(n, S, c)
    K = th.polytropic_constant(S)
    assert np.allclose(cl.P, K * n ** (5 / 3), rtol=1e-3)
    assert np.allclose(cl.sound**2, 5 / 3 * K * n ** (2 / 3), rtol=1e-3)


def test_gauss_residual_stays_small():
    g = Grid1D(64)
    st = rem.rem_state(1.0 + 0.1 * np.cos(g.x), 0.1 * np.sin(g.x), g, 10.0, 2.0)
    worst = 0.0
    for _ in range(1000):
        st = rem.rem_step_1d(st, 0.3 * g.dx / rem.rem_max_speed(st))
        worst = max(worst, st.gauss_residual())
    assert worst < 1e-8


def test_fast_flow_rejected():
    g = Grid1D(32)
    st = rem.rem_state(np.ones(32), np.full(32, 0.6), g, 1.0, 2.0)
    with pytest.raises(SolverError):
        rem.rem_step_1d(st, 1e-4)


def test_slab_data_parity():
    d = rem.SlabData()
    x = np.linspace(-3, 3, 7)
    n0, u0 = d.leading(x)
    assert np.allclose(n0, n0[::-1])
    assert np.allclose(u0, -u0[::-1])


def test_loglog_slope():
    x = np.array([1.0, 2.0, 4.0])
    assert rem.loglog_slope(x, 3.0 / x) == pytest.approx(-1.0)


def test_newtonian_errors_decrease():
    errs = rem.newtonian_limit_errors((10.0, 20.0), N=128, t_end=0.1)
    assert errs[1] < errs[0]
    assert rem.loglog_slope((10.0, 20.0), errs) == pytest.approx(-1.0, abs=0.2)

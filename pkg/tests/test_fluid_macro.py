import numpy as np
import pytest

from artifact import thermo as th
from artifact.fluid import macro


def test_symmetrizer_matches_quadrature():
    st = th.FluidState(1.2, [0.4, -0.2, 0.3], 0.9)
    c = 3.0
    A0 = macro.assemble_macro_matrices(st, np.zeros(3), np.zeros(3), c).A0
    Q = macro.symmetrizer_by_quadrature(st, c, n_radial=120)
    assert np.allclose(A0, Q, rtol=1e-8, atol=1e-10 * np.max(np.abs(A0)))


def test_flux_matrices_symmetric():
    st = th.FluidState(0.8, [1.0, 2.0, -0.5], 1.3)
    out = macro.assemble_macro_matrices(st, np.zeros(3), np.zeros(3), 10.0)
    assert out.A.shape == (3, 5, 5)
    for M in out.A:
        assert np.array_equal(M, M.T)


def test_random_states_positive_definite():
    for st in macro.random_admissible_states(40, 50.0, seed=1):
        ok, minors = macro.positive_definiteness_check(
            macro.assemble_macro_matrices(st, np.zeros(3), np.zeros(3), 50.0).A0
        )
        assert ok
        assert np.all(minors > 0)


def test_indefinite_detected():
    ok, minors = macro.positive_definiteness_check(np.diag([1.0, -1.0, 2.0]))
    assert not ok
    assert minors[1] == pytest.approx(-1.0)


def test_asymmetric_rejected():
    with pytest.raises(macro.AsymmetricMatrixError):
        macro.positive_definiteness_check(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_admissible_states_ranges():
    c = 8.0
    for st in macro.random_admissible_states(50, c, seed=2):
        assert 0.5 <= st.n <= 2 and 0.5 <= st.T <= 2
        assert np.linalg.norm(st.u) <= c / 4

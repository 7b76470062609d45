"""Registered verification checks, grouped by acceptance criterion and by suite.

Every check yields a :class:`CheckResult`. ``value`` is compared with ``tol``
as an upper bound unless ``lower`` is set, in which case it must exceed it.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .. import characteristics as ch
from .. import collision as col
from .. import field_repr as fr
from .. import moments as mo
from .. import special_functions as sf
from .. import thermo as th
from ..fluid import curl_div as cd
from ..fluid import ep, grids, macro, rem
from ..quadrature import lebedev


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    tol: float
    passed: bool
    wall: float = 0.0
    lower: bool = False


def upper(name: str, value: float, tol: float) -> CheckResult:
    value = float(value)
    return CheckResult(name, value, tol, bool(np.isfinite(value) and value <= tol))


def lower_bound(name: str, value: float, tol: float) -> CheckResult:
    value = float(value)
    return CheckResult(name, value, tol, bool(np.isfinite(value) and value > tol), lower=True)


def _unit(rng, k=None):
    v = rng.normal(size=(3,) if k is None else (k, 3))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


# 1. Bessel functions -------------------------------------------------------------


def check_bessel() -> list[CheckResult]:
    z = np.geomspace(0.5, 500.0, 20)
    suite = sf.bessel_identity_suite(z)
    worst = 0.0
    for j in range(4):
        for n in range(1, 7):
            for zz in np.geomspace(5.0, 500.0, 12):
                series = sf.bessel_k_asymptotic(j, zz, n)
                ref = sf.bessel_k(j, zz)
                gap = abs(series.scaled - ref.scaled)
                bound = series.estimated_abs_error * math.exp(zz) + ref.estimated_abs_error * math.exp(zz)
                worst = max(worst, gap / bound)
    return [
        upper("bessel-recurrence", suite["recurrence"], 1e-12),
        upper("bessel-derivative", suite["derivative"], 1e-7),
        upper("bessel-monotone", 0.0 if suite["monotone"] else 1.0, 0.5),
        upper("bessel-asymptotic-remainder", worst, 1.0),
    ]


# 2. thermodynamic closure ------------------------------------------------------------


def check_thermo() -> list[CheckResult]:
    rng = np.random.default_rng(2)
    forms = 0.0
    for _ in range(50):
        st = th.FluidState(rng.uniform(0.1, 10.0), np.zeros(3), rng.uniform(0.05, 20.0))
        c = 10 ** rng.uniform(0.0, 2.0)
        e3 = th.energy_density(st, c, "K3")
        e1 = th.energy_density(st, c, "K1")
        forms = max(forms, abs(e3 - e1) / abs(e3))
    S = 1.0
    iso = 0.0
    trip = 0.0
    for c in (1.0, 5.0, 20.0, 100.0):
        for n in (0.3, 1.0, 3.0):
            h = 1e-4 * n
            P = lambda m: m * th.solve_temperature(m, S, c)  # noqa: E731
            fd = (-P(n + 2 * h) + 8 * P(n + h) - 8 * P(n - h) + P(n - 2 * h)) / (12 * h)
            exact = float(th.n_dh_dn(np.array([n]), S, c)[0])
            iso = max(iso, abs(fd - exact) / abs(exact))
    for c in (1.0, 10.0, 100.0):
        for T in np.geomspace(0.05, 20.0, 9):
            n = float(th.density_on_isentrope(T, S, c))
            trip = max(trip, abs(th.solve_temperature(n, S, c) - T) / T)
    cs = np.array([10.0, 20.0, 40.0, 80.0])
    n = 1.3
    gaps = [abs(th.solve_temperature(n, S, c) - float(th.newtonian_temperature(n, S=S))) for c in cs]
    slope = rem.loglog_slope(cs, gaps)
    return [
        upper("thermo-energy-forms", forms, 1e-12),
        upper("thermo-isentropic-identity", iso, 1e-5),
        upper("thermo-temperature-roundtrip", trip, 1e-8),
        upper("thermo-newtonian-slope", abs(slope + 2.0), 0.2),
    ]


# 3. moments ------------------------------------------------------------------------------


MOMENT_STATES = [
    (1.0, 0.0, 1.0),
    (1.0, 0.25, 1.0),
    (2.0, 0.15, 0.5),
    (10.0, 0.25, 1.5),
    (10.0, 0.1, 3.0),
]


def check_moments() -> list[CheckResult]:
    rng = np.random.default_rng(3)
    worst = 0.0
    ortho = 0.0
    for c, frac, T in MOMENT_STATES:
        st = th.FluidState(rng.uniform(0.5, 2.0), frac * c * _unit(rng), T)
        quad = mo.quadrature_moments(st, c)
        first, second = mo.first_second_moments(st, c)
        third = mo.boosted_third_moment(st, c)
        contracted = mo.contracted_third_moment(st, c)
        for closed, numeric in ((first, quad.first), (second, quad.second), (third, quad.third), (contracted, quad.third)):
            worst = max(worst, mo.max_relative_error(closed, numeric))
        lam = mo.lorentz_boost(st.u, c)
        ortho = max(ortho, float(np.max(np.abs(lam.T @ mo.METRIC @ lam - mo.METRIC))))
    return [
        upper("moments-closed-vs-quadrature", worst, 1e-5),
        upper("moments-boost-orthogonality", ortho, 1e-12),
    ]


# 4-7. collision operator ----------------------------------------------------------------


def _random_pairs(rng, k, c):
    scale = c * 10 ** rng.uniform(-2.0, 1.0, size=(k, 1))
    return scale * rng.normal(size=(k, 3)), scale * rng.normal(size=(k, 3)), _unit(rng, k)


def check_collision_kinematics(trials: int = 10_000) -> list[CheckResult]:
    rng = np.random.default_rng(4)
    mom = en = sid = 0.0
    for c in (1.0, 10.0, 100.0):
        p, q, w = _random_pairs(rng, trials, c)
        total = p + q
        e_in = th.energy(p, c) + th.energy(q, c)
        inv = col.collision_invariants(p, q, c)
        s_ref = inv.g**2 + 4.0 * c * c
        sid = max(sid, float(np.max(np.abs(inv.s - s_ref) / s_ref)))
        for out in (col.post_cm(p, q, w, c), col.post_gs(p, q, w, c)):
            scale = np.linalg.norm(p, axis=1) + np.linalg.norm(q, axis=1)
            gap = np.linalg.norm(out.p + out.q - total, axis=1) / scale
            mom = max(mom, float(np.max(gap)))
            e_out = th.energy(out.p, c) + th.energy(out.q, c)
            en = max(en, float(np.max(np.abs(e_out - e_in) / e_in)))
    return [
        upper("collision-momentum-conservation", mom, 1e-12),
        upper("collision-energy-conservation", en, 1e-10),
        upper("collision-s-identity", sid, 1e-12),
    ]


def check_collision_jacobian(configs: int = 100) -> list[CheckResult]:
    rng = np.random.default_rng(5)
    worst = 0.0
    for k in range(configs):
        c = (1.0, 10.0, 100.0)[k % 3]
        scale = c * 10 ** rng.uniform(-1.0, 0.5)
        p, q, w = scale * rng.normal(size=3), scale * rng.normal(size=3), _unit(rng)
        fd, exact = col.jacobian_gs_check(p, q, w, c)
        worst = max(worst, abs(fd - exact) / abs(exact))
    return [upper("collision-jacobian", worst, 1e-5)]


def _test_function(rng):
    a, b = rng.normal(size=3), rng.normal(size=3)
    s1, s2 = rng.uniform(0.05, 0.5, size=2)

    def G(p, q, po, qo):
        return np.exp(-s1 * np.sum(po * po, -1)) * (1.0 + np.tanh(qo @ a)) + np.cos(po @ b) * np.exp(
            -s2 * np.sum(qo * qo, -1)
        )

    return G


def check_frame_equivalence(pairs: int = 20) -> list[CheckResult]:
    rng = np.random.default_rng(6)
    worst = 0.0
    for k in range(pairs):
        c = (1.0, 10.0, 100.0)[k % 3]
        scale = c * 10 ** rng.uniform(-1.5, 0.5)
        p, q = scale * rng.normal(size=3), scale * rng.normal(size=3)
        lhs, rhs = col.frame_equivalence(_test_function(rng), p, q, c)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    return [upper("collision-frame-equivalence", worst, 1e-8)]


def check_maxwellian_annihilation() -> list[CheckResult]:
    c = 5.0
    st = th.FluidState(1.0, [0.3, 0.0, 0.0], 1.0)
    M = lambda x: th.juttner(st, x, c)  # noqa: E731
    worst = 0.0
    for p in ([0.0, 0.0, 0.0], [1.0, 0.5, 0.0], [-2.0, 0.0, 1.0], [0.3, 3.0, -1.0]):
        gain, loss = col.q_collision(M, M, np.array(p), c, st)
        # loss = nu(p) M(p) exactly
        worst = max(worst, abs(gain - loss) / loss)
    return [upper("collision-maxwellian-annihilation", worst, 1e-6)]


def check_invariant_moments() -> list[CheckResult]:
    c = 5.0
    st = th.FluidState(1.0, [0.3, 0.0, 0.0], 1.0)

    def F(x):
        bump = np.exp(-0.5 * np.sum((x - np.array([0.5, 0.0, 0.0])) ** 2, axis=-1))
        return th.juttner(st, x, c) * (1.0 + 0.3 * bump * np.tanh(x[..., 0]))

    out = col.invariant_moments_axisymmetric(F, st, c)
    worst = max(abs(out["mass"]), float(np.max(np.abs(out["momentum"]))), abs(out["energy"]))
    return [upper("collision-invariant-moments", worst, 1e-5)]


def check_collision_frequency() -> list[CheckResult]:
    c = 100.0
    st = th.FluidState(1.0, np.zeros(3), 1.0)
    d = np.array([1.0, 2.0, 2.0]) / 3.0
    low = [col.collision_frequency(st, r * d, c) / (1.0 + r) for r in (0.0, 0.5, 2.0, 10.0, 30.0, 100.0)]
    high = [col.collision_frequency(st, r * d, c) / c for r in (100.0, 300.0, 1e3, 1e4, 1e5)]
    return [
        upper("collision-frequency-low", max(low) / min(low), 100.0),
        upper("collision-frequency-high", max(high) / min(high), 100.0),
    ]


# 8. characteristics ---------------------------------------------------------------------


def smooth_fields(amp: float = 1.0) -> ch.FieldSampler:
    """Smooth periodic fields with analytic gradients and Lipschitz constant about amp."""

    def E(t, x):
        return amp * np.cos(t) * np.array([np.sin(x[1]), np.sin(x[2]), np.sin(x[0])])

    def B(t, x):
        return amp * np.array([np.cos(x[2]), np.cos(x[0]), np.cos(x[1])])

    def gE(t, x):
        G = np.zeros((3, 3))
        G[1, 0], G[2, 1], G[0, 2] = np.cos(x[1]), np.cos(x[2]), np.cos(x[0])
        return amp * np.cos(t) * G

    def gB(t, x):
        G = np.zeros((3, 3))
        G[2, 0], G[0, 1], G[1, 2] = -np.sin(x[2]), -np.sin(x[0]), -np.sin(x[1])
        return amp * G

    return ch.FieldSampler(E=E, B=B, lipschitz=amp, grad_E=gE, grad_B=gB)


def check_characteristics() -> list[CheckResult]:
    rng = np.random.default_rng(8)
    zero = 0.0
    for _ in range(5):
        c = 10 ** rng.uniform(0, 2)
        init = ch.PhaseState(rng.normal(size=3), c * rng.normal(size=3), 1.0)
        traj = ch.variational_jacobian(init, ch.zero_fields(), 0.0, c, 64)
        p0 = math.sqrt(c * c + init.P @ init.P)
        X = init.X + c * (traj.tau[-1] - init.t) * init.P / p0
        J = ch.free_streaming_jacobian(init.P, traj.tau[-1], init.t, c)
        zero = max(zero, float(np.max(np.abs(traj.X[-1] - X)) / (1 + np.max(np.abs(X)))))
        zero = max(zero, float(np.max(np.abs(traj.JX[-1] - J)) / np.max(np.abs(J))))
    fields = smooth_fields()
    var = 0.0
    for _ in range(4):
        c = 10 ** rng.uniform(0, 1.5)
        init = ch.PhaseState(rng.normal(size=3), c * rng.normal(size=3), 0.5)
        traj = ch.variational_jacobian(init, fields, 0.0, c, 256)
        fd = ch.fd_position_jacobian(init, fields, 0.0, c, 256)
        var = max(var, float(np.max(np.abs(traj.JX[-1] - fd)) / np.max(np.abs(fd))))
    samples = [ch.PhaseState(rng.normal(size=3), 3.0 * rng.normal(size=3), 1.0) for _ in range(20)]
    bound = ch.jacobian_bounds_check(fields, 10.0, samples)
    return [
        upper("characteristics-zero-field", zero, 1e-12),
        upper("characteristics-variational-fd", var, 1e-6),
        upper("characteristics-jacobian-bound", bound["C"], 4.0),
    ]


# 9. field kernels ----------------------------------------------------------------------


def check_field_kernels(samples: int = 30) -> list[CheckResult]:
    rng = np.random.default_rng(9)
    null_a = null_b = i2 = i3 = 0.0
    for _ in range(samples):
        c = 10 ** rng.uniform(-0.5, 2.0)
        p = _unit(rng) * rng.uniform(0.0, 10.0 * c)
        A, B = fr.angular_null_check(p, c)
        null_a = max(null_a, float(np.max(np.abs(A))))
        null_b = max(null_b, float(np.max(np.abs(B))))
        I2, I3 = fr.reference_integrals(p, c)
        i2 = max(i2, abs(I2 - 4.0 * np.pi))
        ref = 4.0 * np.pi * p
        i3 = max(i3, float(np.max(np.abs(I3 - ref))) / max(1.0, float(np.max(np.abs(ref)))))
    slope, _ = fr.growth_exponent(1.0)
    return [
        upper("angular-null-aA", null_a, 1e-8),
        upper("angular-null-aB", null_b, 1e-8),
        upper("reference-integral-I2", i2, 1e-10),
        upper("reference-integral-I3", i3, 1e-10),
        upper("kernel-growth-exponent", slope, 8.0),
    ]


# 10-13. fluid hierarchy -----------------------------------------------------------------


NEWTONIAN_C = (10.0, 20.0, 40.0, 80.0)


def check_newtonian_rate() -> list[CheckResult]:
    errors = rem.newtonian_limit_errors(NEWTONIAN_C, N=512, t_end=0.5)
    slope = rem.loglog_slope(NEWTONIAN_C, errors)
    return [upper("newtonian-rate-slope", abs(slope + 1.0), 0.2)]


def check_curl_div() -> list[CheckResult]:
    g = grids.Grid3DPeriodic(32)
    n0, u0, phi0 = cd.manufactured_leading_order(g)
    f = cd.curl_div_forcing(n0, u0, cd.consistent_dE0_dt(n0, u0, g))
    B = cd.curl_div_solve(f, g)
    grad_pair, eff_pair = cd.gradient_part_pairings(n0, u0, phi0, 1.0, g)
    return [
        upper("curl-div-irrotational-u0", float(np.max(np.abs(g.curl(u0)))), 1e-10),
        upper("curl-div-divergence", float(np.max(np.abs(g.div(B)))), 1e-10),
        upper("curl-div-curl-residual", float(np.max(np.abs(g.curl(B) - f))), 1e-8),
        upper("curl-div-gradient-pairing", max(grad_pair, eff_pair), 1e-10),
    ]


REMAINDER_C = (10.0, 20.0, 40.0, 80.0)


def check_remainder() -> list[CheckResult]:
    g = grids.Grid3DPeriodic(32)
    tier = cd.manufactured_tier(g)
    gauss = divb = 0.0
    norms = []
    for c in REMAINDER_C:
        a, b = cd.residual_identities(tier, g, c)
        gauss, divb = max(gauss, a), max(divb, b)
        norms.append(cd.residual_norm(tier, g, c))
    slope = rem.loglog_slope(REMAINDER_C, norms)
    return [
        upper("remainder-gauss-identity", gauss, 1e-8),
        upper("remainder-magnetic-divergence", divb, 1e-8),
        upper("remainder-slope", abs(slope + 1.0), 0.1),
    ]


def check_symmetrizer(states: int = 100, c: float = 50.0) -> list[CheckResult]:
    worst = np.inf
    failures = 0
    for st in macro.random_admissible_states(states, c, seed=13):
        A0 = macro.assemble_macro_matrices(st, np.zeros(3), np.zeros(3), c).A0
        ok, minors = macro.positive_definiteness_check(A0)
        failures += not ok
        worst = min(worst, float(np.min(minors)))
    return [
        upper("symmetrizer-cholesky-failures", failures, 0.5),
        lower_bound("symmetrizer-min-leading-minor", worst, 0.0),
    ]


def check_fluid_extras() -> list[CheckResult]:
    grid = grids.Grid1D(128)
    K = th.polytropic_constant(2.0)
    x = grid.x
    state = ep.ep_state(1.0 + 0.2 * np.cos(x), 0.3 * np.sin(x), grid)
    mass0 = float(np.sum(state.rho))
    drift = 0.0
    dt = ep.stable_dt(state, K) * 0.5
    for _ in range(20):
        state = ep.ep_step(state, dt, K)
        drift = max(drift, abs(float(np.sum(state.rho)) - mass0) / mass0)
    measured, predicted = ep.measure_dispersion()
    lin, _ = ep.measure_dispersion(linearized=True)
    const = ep.ep_state(np.ones(64), np.zeros(64), grids.Grid1D(64))
    after = ep.ep_step(const, 0.01, K)
    slab = rem.rem_state(np.ones(64), np.zeros(64), grids.Grid1D(64), 20.0, 2.0)
    slab_after = rem.rem_step_1d(slab, 0.01)
    return [
        upper("ep-mass-conservation", drift, 1e-12),
        upper("ep-dispersion", abs(measured - predicted) / predicted, 0.02),
        upper("linearized-ep-dispersion", abs(lin - predicted) / predicted, 0.01),
        upper("ep-fixed-point", float(np.max(np.abs(after.rho - 1.0)) + np.max(np.abs(after.u))), 1e-14),
        upper("rem-fixed-point", float(np.max(np.abs(slab_after.n - 1.0)) + np.max(np.abs(slab_after.u))), 1e-12),
        upper("rem-gauss-residual", slab_after.gauss_residual(), 1e-8),
    ]


# registry -----------------------------------------------------------------------------


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    budget: float  # seconds
    run: Callable[[], list[CheckResult]]


def _chain(*fns):
    return lambda: [r for fn in fns for r in fn()]


CRITERIA = {
    1: Criterion(1, "Bessel identities", 5.0, check_bessel),
    2: Criterion(2, "Thermodynamic closure", 10.0, check_thermo),
    3: Criterion(3, "Moments", 60.0, check_moments),
    4: Criterion(4, "Collision exactness", 30.0, check_collision_kinematics),
    5: Criterion(5, "Jacobian identity", 30.0, check_collision_jacobian),
    6: Criterion(
        6,
        "Frame equivalence",
        300.0,
        _chain(check_frame_equivalence, check_maxwellian_annihilation, check_invariant_moments),
    ),
    7: Criterion(7, "Collision frequency regimes", 120.0, check_collision_frequency),
    8: Criterion(8, "Characteristics", 120.0, check_characteristics),
    9: Criterion(9, "Field-kernel identities", 60.0, check_field_kernels),
    10: Criterion(10, "Newtonian limit rate", 600.0, check_newtonian_rate),
    11: Criterion(11, "Curl-div system", 60.0, check_curl_div),
    12: Criterion(12, "Remainder residuals", 120.0, check_remainder),
    13: Criterion(13, "Positive definiteness", 5.0, check_symmetrizer),
}

SUITES = {
    "bessel": [check_bessel],
    "thermo": [check_thermo],
    "moments": [check_moments],
    "collision": [
        check_collision_kinematics,
        check_collision_jacobian,
        check_frame_equivalence,
        check_maxwellian_annihilation,
        check_invariant_moments,
        check_collision_frequency,
    ],
    "characteristics": [check_characteristics],
    "field-kernels": [check_field_kernels],
    "fluid": [check_fluid_extras, check_curl_div, check_remainder, check_symmetrizer, check_newtonian_rate],
}


def run_criterion(number: int) -> tuple[list[CheckResult], float]:
    crit = CRITERIA[number]
    start = time.perf_counter()
    results = crit.run()
    return results, time.perf_counter() - start

"""Hard-sphere relativistic collision kinematics and the collision operator.

Two parametrisations of the post-collision momenta are provided: the
centre-of-momentum map (p', q') and the Glassey-Strauss map (p'', q'').
All kinematic functions broadcast over leading axes; the last axis of every
momentum has length 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .quadrature import SphereQuadrature, ball_rule, lebedev, product_rule
from .thermo import FluidState, GlobalMaxwellianParams, energy, juttner, maxwellian_radius


@dataclass(frozen=True)
class CollisionInvariants:
    g: np.ndarray
    s: np.ndarray
    v_phi: np.ndarray


@dataclass(frozen=True)
class PostCollisionCM:
    p: np.ndarray
    q: np.ndarray
    p0: np.ndarray
    q0: np.ndarray
    gamma0: np.ndarray


@dataclass(frozen=True)
class PostCollisionGS:
    p: np.ndarray
    q: np.ndarray
    a: np.ndarray
    kernel: np.ndarray


def _dot(a, b):
    return np.sum(a * b, axis=-1)


def collision_invariants(p, q, c: float) -> CollisionInvariants:
    """Relative momentum g, total energy squared s and the Moller velocity."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    p0, q0 = energy(p, c), energy(q, c)
    cross = p0 * q0 - _dot(p, q)
    g2 = 2.0 * (cross - c * c)
    if np.any(g2 < -1e-12 * c * c * np.maximum(1.0, cross / (c * c))):
        raise FloatingPointError("negative radicand in relative momentum")
    g = np.sqrt(np.clip(g2, 0.0, None))
    s = 2.0 * (cross + c * c)
    v_phi = 0.25 * c * g * np.sqrt(s) / (p0 * q0)
    return CollisionInvariants(g=g, s=s, v_phi=v_phi)


def post_cm(p, q, omega, c: float) -> PostCollisionCM:
    """Centre-of-momentum post-collision momenta and energies."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    omega = np.asarray(omega, dtype=float)
    p0, q0 = energy(p, c), energy(q, c)
    inv = collision_invariants(p, q, c)
    g, s = inv.g, inv.s
    total = p + q
    tt = _dot(total, total)
    sqrt_s = np.sqrt(s)
    gamma0 = (p0 + q0) / sqrt_s
    tw = _dot(total, omega)
    degenerate = tt < (1e-10 * (p0 + q0)) ** 2
    # the projector has no single limit at p + q = 0; zero keeps conservation exact
    proj = np.where(degenerate, 0.0, (gamma0 - 1.0) * tw / np.where(degenerate, 1.0, tt))
    shift = 0.5 * g[..., None] * (omega + proj[..., None] * total)
    half = 0.5 * total
    p_out = half + shift
    q_out = half - shift
    de = 0.5 * g * tw / sqrt_s
    e = 0.5 * (p0 + q0)
    return PostCollisionCM(p=p_out, q=q_out, p0=e + de, q0=e - de, gamma0=gamma0)


def gs_denominator(p, q, omega, c: float) -> np.ndarray:
    p0, q0 = energy(p, c), energy(q, c)
    return (p0 + q0) ** 2 - _dot(omega, p + q) ** 2


def post_gs(p, q, omega, c: float) -> PostCollisionGS:
    """Glassey-Strauss post-collision momenta p + a omega, q - a omega and kernel B."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    omega = np.asarray(omega, dtype=float)
    p0, q0 = energy(p, c), energy(q, c)
    den = gs_denominator(p, q, omega, c)
    rel = _dot(omega, q / q0[..., None] - p / p0[..., None])
    a = 2.0 * p0 * q0 * (p0 + q0) * rel / den
    kernel = c * (p0 + q0) ** 2 * p0 * q0 * np.abs(rel) / den**2
    return PostCollisionGS(p=p + a[..., None] * omega, q=q - a[..., None] * omega, a=a, kernel=kernel)


def gs_weight(p, q, omega, c: float) -> np.ndarray:
    """s B / (p^0 q^0), the angular weight of the Glassey-Strauss integral."""
    inv = collision_invariants(p, q, c)
    gs = post_gs(p, q, omega, c)
    return inv.s * gs.kernel / (energy(p, c) * energy(q, c))


def gs_jacobian_closed_form(p, q, omega, c: float) -> float:
    gs = post_gs(p, q, omega, c)
    return float(-energy(gs.p, c) * energy(gs.q, c) / (energy(p, c) * energy(q, c)))


def jacobian_gs_check(p, q, omega, c: float, step: float | None = None) -> tuple[float, float]:
    """Central-difference determinant of (p, q) -> (p'', q'') and its closed form."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    x = np.concatenate([p, q])
    h = step if step is not None else 1e-5 * (1.0 + np.linalg.norm(p) + np.linalg.norm(q))
    # all 12 perturbed points evaluated at once
    pert = x[None, :] + h * np.concatenate([np.eye(6), -np.eye(6)])
    gs = post_gs(pert[:, :3], pert[:, 3:], omega, c)
    out = np.concatenate([gs.p, gs.q], axis=1)
    jac = (out[:6] - out[6:]).T / (2.0 * h)
    fd = float(np.linalg.det(jac))
    if not np.isfinite(fd):
        raise FloatingPointError("finite-difference determinant is not finite")
    return fd, gs_jacobian_closed_form(p, q, omega, c)


def frame_equivalence_rules(p, q, c: float, n_theta: int = 128, n_phi: int = 256) -> SphereQuadrature:
    """Product rule aligned with p/p^0 - q/q^0, split on the kink of |omega . axis|."""
    axis = np.asarray(p) / energy(p, c) - np.asarray(q) / energy(q, c)
    if np.linalg.norm(axis) == 0:
        axis = np.array([0.0, 0.0, 1.0])
    return product_rule(n_theta, n_phi, axis=tuple(axis), split=True)


def frame_equivalence(
    G: Callable, p, q, c: float, quad: SphereQuadrature | None = None
) -> tuple[float, float]:
    """Both sides of  int v_phi G(p,q,p',q') domega = int (s B/(p^0 q^0)) G(p,q,p'',q'') domega.

    ``G`` takes (p, q, p_out, q_out) with a leading node axis on the outputs.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    quad = quad if quad is not None else frame_equivalence_rules(p, q, c)
    w = quad.nodes
    P = np.broadcast_to(p, w.shape)
    Qv = np.broadcast_to(q, w.shape)
    cm = post_cm(P, Qv, w, c)
    gs = post_gs(P, Qv, w, c)
    v_phi = collision_invariants(p, q, c).v_phi
    lhs = float(quad.integrate(v_phi * G(P, Qv, cm.p, cm.q)))
    rhs = float(quad.integrate(gs_weight(P, Qv, w, c) * G(P, Qv, gs.p, gs.q)))
    return lhs, rhs


def _centred_q_rule(state: FluidState, p, c: float, n_radial: int, sphere: SphereQuadrature):
    """Quadrature over q centred at p when p sits inside the Maxwellian bulk.

    Centring at p makes g, hence v_phi, smooth in the polar coordinates of q - p.
    Far from the bulk the kink at q = p carries no mass and the ball is centred
    on the Maxwellian instead.
    """
    R = maxwellian_radius(state, c)
    dist = float(np.linalg.norm(np.asarray(p) - state.u))
    if dist <= R:
        return ball_rule(p, R + dist, n_radial, sphere)
    return ball_rule(state.u, R, n_radial, sphere)


def collision_frequency(
    state: FluidState, p, c: float, n_radial: int = 64, sphere: SphereQuadrature | None = None
) -> float:
    """nu(p) = int int v_phi(p, q) M(q) domega dq = 4 pi int v_phi M dq."""
    sphere = sphere if sphere is not None else lebedev()
    p = np.asarray(p, dtype=float)
    ball = _centred_q_rule(state, p, c, n_radial, sphere)
    v = collision_invariants(p, ball.nodes, c).v_phi
    return float(4.0 * np.pi * np.sum(ball.weights * v * juttner(state, ball.nodes, c)))


def weighted_frequency(state: FluidState, p, c: float, alpha: float, n_radial: int = 64) -> float:
    """int int v_phi M(q)^alpha domega dq."""
    sphere = lebedev()
    p = np.asarray(p, dtype=float)
    ball = _centred_q_rule(state, p, c, n_radial, sphere)
    v = collision_invariants(p, ball.nodes, c).v_phi
    return float(4.0 * np.pi * np.sum(ball.weights * v * juttner(state, ball.nodes, c) ** alpha))


def q_collision(
    F: Callable,
    G: Callable,
    p,
    c: float,
    support: FluidState,
    n_radial: int = 48,
    q_sphere: SphereQuadrature | None = None,
    omega_sphere: SphereQuadrature | None = None,
    chunk: int = 4096,
) -> tuple[float, float]:
    """Gain and loss parts of Q(F, G)(p) in the centre-of-momentum form.

    ``support`` is a Maxwellian state whose bulk covers the support of G; it
    fixes the q-ball. Returns (gain, loss) so that Q = gain - loss.
    """
    q_sphere = q_sphere if q_sphere is not None else lebedev()
    omega_sphere = omega_sphere if omega_sphere is not None else lebedev()
    p = np.asarray(p, dtype=float)
    ball = _centred_q_rule(support, p, c, n_radial, q_sphere)
    qn, qw = ball.nodes, ball.weights
    v = collision_invariants(p, qn, c).v_phi
    loss = 4.0 * np.pi * float(F(p[None, :])[0]) * np.sum(qw * v * G(qn))
    gain = 0.0
    w = omega_sphere.nodes
    for start in range(0, len(qn), chunk):
        qc = qn[start : start + chunk]
        Pb = np.broadcast_to(p, (len(qc), len(w), 3))
        Qb = np.broadcast_to(qc[:, None, :], (len(qc), len(w), 3))
        cm = post_cm(Pb, Qb, w[None, :, :], c)
        ang = (F(cm.p) * G(cm.q)) @ omega_sphere.weights
        gain += np.sum(qw[start : start + chunk] * v[start : start + chunk] * ang)
    return float(gain), float(loss)


def kernel_k1(state: FluidState, p, q, c: float) -> np.ndarray:
    """pi c g sqrt(s)/(p^0 q^0) sqrt(M(p) M(q))."""
    inv = collision_invariants(p, q, c)
    return np.pi * c * inv.g * np.sqrt(inv.s) / (energy(p, c) * energy(q, c)) * np.sqrt(
        juttner(state, p, c) * juttner(state, q, c)
    )


def kernel_bounds(p, q, params: GlobalMaxwellianParams) -> tuple[np.ndarray, np.ndarray]:
    """Bounding kernels k1 = |p-q| e^{-d|p|/T} e^{-d|q|/T} and k2 = e^{-d|p-q|/(2T)}/|p-q|."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    d = params.alpha - 0.5
    T = params.T_M
    r = np.linalg.norm(p - q, axis=-1)
    k1 = r * np.exp(-d * np.linalg.norm(p, axis=-1) / T) * np.exp(-d * np.linalg.norm(q, axis=-1) / T)
    with np.errstate(divide="ignore"):
        k2 = np.exp(-d * r / (2.0 * T)) / r
    return k1, k2


def kernel_bound_integrals(p, params: GlobalMaxwellianParams, ell: float = 0.0, n_radial: int = 96) -> dict:
    """int k_w e^{d|p-q|/(4T)} dq and int k_w^2 dq for each bounding kernel.

    k_w = k w(p)/w(q) with w(p) = (1 + |p|^2)^(ell/2). The q-ball is centred at p
    so that the 1/|p-q| singularity of k2 is absorbed by the radial Jacobian.
    """
    p = np.asarray(p, dtype=float)
    d = params.alpha - 0.5
    T = params.T_M
    pn = float(np.linalg.norm(p))
    R = pn + 160.0 * T / d
    ball = ball_rule(p, R, n_radial, lebedev())
    q = ball.nodes
    k1, k2 = kernel_bounds(p, q, params)
    wr = ((1.0 + pn * pn) / (1.0 + np.sum(q * q, axis=-1))) ** (ell / 2.0)
    grow = np.exp(d * np.linalg.norm(p - q, axis=-1) / (4.0 * T))
    out = {}
    for name, k in (("k1", k1), ("k2", k2)):
        kw = k * wr
        out[name] = float(np.sum(ball.weights * kw * grow))
        out[name + "_sq"] = float(np.sum(ball.weights * kw * kw))
    return out


def k2_bound_integral_exact(params: GlobalMaxwellianParams) -> tuple[float, float]:
    """Closed forms of int k2 e^{d|p-q|/(4T)} dq and int k2^2 dq (ell = 0), both p-independent."""
    d = params.alpha - 0.5
    T = params.T_M
    return 4.0 * np.pi * (4.0 * T / d) ** 2, 4.0 * np.pi * T / d


def bump(r) -> np.ndarray:
    """Smooth cutoff equal to 1 on [0, 1] and 0 on [2, inf)."""
    r = np.asarray(r, dtype=float)
    x = np.clip(r - 1.0, 0.0, 1.0)

    def f(t):
        with np.errstate(divide="ignore", over="ignore"):
            return np.where(t > 0, np.exp(-1.0 / np.where(t > 0, t, 1.0)), 0.0)

    return f(1.0 - x) / (f(1.0 - x) + f(x))


def region_cutoffs(p, q, c: float) -> tuple[np.ndarray, np.ndarray]:
    """Partition of unity chi_A + chi_Ac = 1 separating |p| <~ q^0 from |p| >> q^0."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    a = bump(energy(p, c) / c)
    b = bump((2.0 / 3.0) * np.linalg.norm(p, axis=-1) / energy(q, c))
    chi_ac = (1.0 - a) * (1.0 - b)
    chi_a = a + (1.0 - a) * b
    return chi_a, chi_ac


def weight(p, ell: float) -> np.ndarray:
    """<p>^ell = (1 + |p|^2)^(ell/2)."""
    p = np.asarray(p, dtype=float)
    return (1.0 + np.sum(p * p, axis=-1)) ** (ell / 2.0)


def invariant_moments_axisymmetric(
    F: Callable,
    support: FluidState,
    c: float,
    n_r: int = 32,
    n_mu: int = 16,
    q_radial: int = 40,
    q_degree: int = 23,
    omega_degree: int = 11,
) -> dict:
    """int Q(F, F) psi dp for psi in (1, p, p^0), for F symmetric about the x-axis.

    ``support.u`` must lie on the x-axis. Symmetry reduces the p-integral to a
    half-plane; the y and z momentum moments vanish by symmetry and are
    returned as exact zeros.
    """
    if np.any(support.u[1:] != 0):
        raise ValueError("support must drift along the x-axis")
    q_sphere, omega_sphere = lebedev(q_degree), lebedev(omega_degree)
    R = maxwellian_radius(support, c)
    t, wt = np.polynomial.legendre.leggauss(n_r)
    r = 0.5 * R * (t + 1.0)
    wr = 0.5 * R * wt * r * r
    mu, wmu = np.polynomial.legendre.leggauss(n_mu)
    totals = np.zeros(3)
    scale = 0.0
    for ri, wri in zip(r, wr):
        for m, wm in zip(mu, wmu):
            p = support.u + ri * np.array([m, np.sqrt(1.0 - m * m), 0.0])
            gain, loss = q_collision(F, F, p, c, support, q_radial, q_sphere, omega_sphere)
            psi = np.array([1.0, p[0], energy(p, c)])
            totals += 2.0 * np.pi * wri * wm * (gain - loss) * psi
            scale += 2.0 * np.pi * wri * wm * loss
    return {"mass": totals[0], "momentum": np.array([totals[1], 0.0, 0.0]), "energy": totals[2], "loss_mass": scale}

"""Experiment drivers behind the command-line subcommands. Each returns CSV rows."""

from __future__ import annotations

import csv
import io
from pathlib import Path

import numpy as np

from .. import collision as col
from .. import thermo as th
from ..fluid import curl_div as cd
from ..fluid import ep, grids, rem
from .config import ExperimentConfig


def _fmt(v) -> str:
    if v is None or v == "":
        return ""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.10e}"


def to_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def to_gnuplot(header: list[str], rows: list[list]) -> str:
    lines = ["# " + " ".join(header)]
    lines += [" ".join(_fmt(v) if _fmt(v) else "?" for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def emit(header, rows, path: str | None, gnuplot: bool = False) -> str:
    text = to_csv(header, rows)
    if path:
        Path(path).write_text(text)
        if gnuplot:
            Path(path).with_suffix(".dat").write_text(to_gnuplot(header, rows))
    return text


def _slab(cfg: ExperimentConfig) -> rem.SlabData:
    return rem.SlabData(cfg.init_n_bar, cfg.init_dn, cfg.init_du, cfg.init_dn1, cfg.init_du1)


def run_sweep(cfg: ExperimentConfig):
    """(c, eps, error, slope) rows for the relativistic-vs-classical comparison."""
    cs = list(cfg.physics_c_list)
    errors = rem.newtonian_limit_errors(
        cs, N=cfg.grid_n, t_end=cfg.time_tmax, S=cfg.physics_entropy, data=_slab(cfg), first_order=cfg.init_first_order
    )
    slope = rem.loglog_slope(cs, errors) if len(cs) > 1 else None
    eps = cfg.physics_eps_list[0] if cfg.physics_eps_list else None
    rows = [[c, eps, e, slope] for c, e in zip(cs, errors)]
    return ["c", "eps", "sup_error", "slope"], rows


def _sample_times(cfg):
    return np.linspace(0.0, cfg.time_tmax, cfg.time_samples)


def solve(cfg: ExperimentConfig, model: str):
    """Time series of conserved totals and constraint residuals for one solver run."""
    grid = grids.Grid1D(cfg.grid_n, cfg.domain_length)
    data = _slab(cfg)
    kx = 2.0 * np.pi * grid.x / grid.L
    n, u = data.leading(kx)
    K = th.polytropic_constant(cfg.physics_entropy)
    if model == "ep":
        state = ep.ep_state(n, u, grid, data.n_bar)
        speed = lambda s: ep.max_speed(s, K)  # noqa: E731
        step = lambda s, dt: ep.ep_step(s, dt, K)  # noqa: E731
        dens = lambda s: s.rho  # noqa: E731
        resid = lambda s: float(  # noqa: E731
            np.max(np.abs(grid.ddx(s.E) - 4.0 * np.pi * (s.rho_bar - s.rho)))
        )
    elif model == "rem":
        c = cfg.physics_c
        if cfg.init_first_order:
            n1, u1 = data.first_order(kx)
            n, u = n + n1 / c, u + u1 / c
        state = rem.rem_state(n, u, grid, c, cfg.physics_entropy)
        speed = rem.rem_max_speed
        step = rem.rem_step_1d
        dens = lambda s: s.D  # noqa: E731
        resid = lambda s: s.gauss_residual()  # noqa: E731
    else:
        raise ValueError(f"unknown model {model!r}")
    rows = []
    for target in _sample_times(cfg):
        while state.t < target - 1e-14:
            dt = cfg.time_dt if cfg.time_dt > 0 else 0.4 * grid.dx / (1.5 * speed(state))
            state = step(state, min(dt, target - state.t))
        d = dens(state)
        rows.append([state.t, float(np.sum(d) * grid.dx), float(np.min(d)), float(np.max(np.abs(state.u))), resid(state)])
    return ["t", "mass", "min_density", "max_speed", "gauss_residual"], rows


def curl_div_report(cfg: ExperimentConfig):
    g = grids.Grid3DPeriodic(cfg.grid_n)
    n0, u0, phi0 = cd.manufactured_leading_order(g, cfg.init_n_bar, cfg.init_dn)
    f = cd.curl_div_forcing(n0, u0, cd.consistent_dE0_dt(n0, u0, g))
    B = cd.curl_div_solve(f, g)
    pair_grad, pair_eff = cd.gradient_part_pairings(n0, u0, phi0, cfg.init_n_bar, g, seed=cfg.seed)
    row = [
        cfg.grid_n,
        float(np.max(np.abs(g.div(B)))),
        float(np.max(np.abs(g.curl(B) - f))),
        pair_grad,
        pair_eff,
        float(np.max(np.abs(B))),
    ]
    return ["N", "div_B", "curl_residual", "gradient_pairing", "effective_pairing", "max_B"], [row]


def collision_table(c_list, radii, n: float = 1.0, T: float = 1.0):
    """nu(|p|) along a fixed direction for a Maxwellian at rest."""
    st = th.FluidState(n, np.zeros(3), T)
    d = np.array([1.0, 2.0, 2.0]) / 3.0
    rows = []
    for c in c_list:
        for r in radii:
            nu = col.collision_frequency(st, r * d, c)
            rows.append([c, r, nu, nu / (1.0 + r), nu / c])
    return ["c", "p", "nu", "nu_over_1_plus_p", "nu_over_c"], rows


def dispersion_table(modes=(1, 2, 3, 4), rho_bar: float = 1.0, S: float = 2.0, N: int = 512):
    K = th.polytropic_constant(S)
    rows = []
    for m in modes:
        meas, pred = ep.measure_dispersion(rho_bar, K, m, N=N)
        lin, _ = ep.measure_dispersion(rho_bar, K, m, N=N, linearized=True)
        rows.append([m, pred, meas, lin, abs(meas - pred) / pred])
    return ["mode", "omega_predicted", "omega_ep", "omega_linearized", "rel_error"], rows

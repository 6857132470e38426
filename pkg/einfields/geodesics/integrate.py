#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import time
from multiprocessing.pool import ThreadPool

import numpy as np
from loguru import logger
from scipy.integrate import DOP853, RK45, OdeSolution, Radau

import torch

from einfields.metrics import ChartId
from einfields.utils import ConfigError, IntegrationError, get_num_workers

from .state import GeodesicState, Trajectory

__all__ = [
    "INTEGRATORS",
    "geodesic_rhs",
    "conserved_quantities",
    "integrate",
    "integrate_many",
]

# RK45: explicit 5(4) pair; DOP853: explicit 8(5,3); Radau: implicit, order 5
INTEGRATORS = {"RK45": RK45, "DOP853": DOP853, "Radau": Radau}


def geodesic_rhs(state: GeodesicState, provider):
    """(dx/dtau, dv/dtau) = (v, -Gamma^mu_{rho sigma} v^rho v^sigma)."""
    gamma = provider(state.x)
    acc = -torch.einsum("mrs,r,s->m", gamma, state.v, state.v)
    return state.v.clone(), acc


def _axial_killing(chart, x):
    """Components of the rotation Killing field about the symmetry axis, (K, 4)."""
    xi = np.zeros_like(x)
    if chart.is_spherical:
        xi[:, 3] = 1.0
    else:
        xi[:, 1] = -x[:, 2]
        xi[:, 2] = x[:, 1]
    return xi


def conserved_quantities(states, provider):
    """
    Killing energy E = -g(d_t, v), axial momentum L_z = g(xi_phi, v) and g(v, v).

    Plane-wave charts have no static or axial symmetry; their E and L_z are NaN.
    """
    states = np.asarray(states, dtype=np.float64)
    x = torch.as_tensor(states[:, :4])
    v = torch.as_tensor(states[:, 4:])
    g = provider.metric(x)
    gv = torch.einsum("kab,kb->ka", g, v).numpy()
    norm = np.einsum("ka,ka->k", gv, states[:, 4:])
    if provider.chart is ChartId.GW_CARTESIAN_TT:
        nan = np.full(len(states), np.nan)
        return np.stack([nan, nan, norm], axis=1)
    energy = -gv[:, 0]
    lz = np.einsum("ka,ka->k", gv, _axial_killing(provider.chart, states[:, :4]))
    return np.stack([energy, lz, norm], axis=1)


def _check_tolerance(name, value):
    if not 1e-14 <= value <= 1e-3:
        raise ConfigError("{} must lie in [1e-14, 1e-3], got {}".format(name, value))


def integrate(provider, ic: GeodesicState, tau_end, rtol=1e-10, atol=1e-12, method="RK45",
              max_step=np.inf, dense=True):
    """
    Integrate the geodesic equation from `ic` up to the affine parameter `tau_end`.

    Every accepted step is kept. `tau_end` may lie before `ic.tau` to integrate
    backwards. The run uses a fork of `provider`, so its counters only cover this
    trajectory; they are added to the provider totals afterwards.

    Args:
        provider (ChristoffelProvider): connection source.
        ic (GeodesicState): initial state.
        tau_end (float): final affine parameter.
        rtol, atol (float): local error tolerances.
        method (str): one of INTEGRATORS.

    Return:
        Trajectory with stats (steps, rejects_estimate, rhs_evals, wallclock_s,
        outside_box for learned providers) and the E, L_z, g(v, v) history.
        scipy does not report rejected steps; rejects_estimate counts the extra
        RHS evaluations of a step in multiples of the stage count, so it is a
        heuristic. It is None for Radau, whose evaluation count also includes
        the Newton iterations.
    """
    _check_tolerance("rtol", rtol)
    _check_tolerance("atol", atol)
    if method not in INTEGRATORS:
        raise ConfigError("unknown integrator {}, choose from {}".format(
            method, list(INTEGRATORS)))
    if tau_end == ic.tau:
        raise ConfigError("tau_end equals the initial affine parameter")

    calls = [0]
    run = provider.fork()

    def fun(tau, y):
        calls[0] += 1
        dx, dv = geodesic_rhs(GeodesicState.from_array(y, tau), run)
        return np.concatenate([dx.numpy(), dv.numpy()])

    start = time.time()
    try:
        states, tau, rejects, interpolants = _solve(fun, ic, tau_end, calls, rtol, atol,
                                                   method, max_step, dense)
    finally:
        provider.absorb(run)
    stats = {
        "method": method,
        "steps": len(tau) - 1,
        "rejects_estimate": rejects,
        "rhs_evals": calls[0],
        "wallclock_s": time.time() - start,
    }
    traj = Trajectory(
        tau=tau,
        states=states,
        chart=provider.chart,
        params=provider.params,
        stats=stats,
        conserved=conserved_quantities(states, provider),
        dense=OdeSolution(tau, interpolants) if dense and interpolants else None,
    )
    drift = traj.drift()
    traj.stats.update({"drift_" + k: v for k, v in drift.items()})
    if provider.learned:
        traj.stats["outside_box"] = run.outside
    logger.info("{} geodesic: {} steps, {} rhs evals, drift {}".format(
        method, stats["steps"], stats["rhs_evals"],
        ", ".join("{}={:.3e}".format(k, v) for k, v in drift.items())))
    return traj


def _solve(fun, ic, tau_end, calls, rtol, atol, method, max_step, dense):
    solver = INTEGRATORS[method](
        fun, float(ic.tau), ic.as_array(), float(tau_end),
        rtol=rtol, atol=atol, max_step=max_step,
    )
    stages = getattr(solver, "n_stages", None)
    taus, ys, interpolants = [solver.t], [solver.y.copy()], []
    rejects = 0
    while solver.status == "running":
        before = calls[0]
        message = solver.step()
        if solver.status == "failed":
            raise IntegrationError("{} failed at tau={}: {}".format(method, solver.t, message))
        if stages is not None:
            rejects += max((calls[0] - before) // stages - 1, 0)
        taus.append(solver.t)
        ys.append(solver.y.copy())
        if dense:
            interpolants.append(solver.dense_output())
        if not np.all(np.isfinite(solver.y)):
            raise IntegrationError("non-finite state at tau={}".format(solver.t))
    if stages is None:
        rejects = None
    return np.stack(ys), np.asarray(taus), rejects, interpolants


def integrate_many(provider, ics, tau_end, workers=None, **kwargs):
    """Integrate independent initial states on a thread pool, keeping input order."""
    ics = list(ics)
    workers = min(get_num_workers(workers), max(len(ics), 1))
    if workers == 1:
        return [integrate(provider, ic, tau_end, **kwargs) for ic in ics]
    with ThreadPool(workers) as pool:
        return pool.map(lambda ic: integrate(provider, ic, tau_end, **kwargs), ics)

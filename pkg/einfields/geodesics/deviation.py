#!/usr/bin/env python3
# -*- coding:utf-8 -*-

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicSpline

import torch

from einfields.autodiff import metric_jet_fn
from einfields.diffgeo import check_field_domain, christoffel_symbols, riemann_tensor
from einfields.metrics import ChartId, transform_fn
from einfields.utils import DomainError, IntegrationError, write_csv

from .state import Trajectory

__all__ = [
    "DeviationSeries",
    "DeviationResult",
    "cartesian_positions",
    "rollout_deviation",
    "geodesic_deviation",
    "orthonormal_components",
]

_CARTESIAN_TARGET = {"schwarzschild": ChartId.SCHWARZSCHILD_KS, "kerr": ChartId.KERR_KS}


@dataclass
class DeviationSeries:
    tau: np.ndarray
    delta_r: np.ndarray

    def max(self):
        return float(np.max(self.delta_r))

    def to_csv(self, path, meta=None):
        rows = np.stack([self.tau, self.delta_r], axis=1)
        return write_csv(path, ("tau", "delta_r"), rows, meta or {})


def cartesian_positions(traj: Trajectory):
    """
    Spatial Cartesian positions (K, 3) of a trajectory.

    Spherical-like charts go through the oblate-spheroidal map of their family, so
    time and azimuth are untouched. No domain check: learned rollouts may leave it.
    """
    chart = traj.chart
    pos = torch.as_tensor(traj.positions)
    if chart.is_spherical:
        fn = transform_fn(chart, _CARTESIAN_TARGET[chart.family], traj.params, spatial_only=True)
        pos = fn(pos)
    return pos[:, 1:].numpy()


def _spline(traj):
    tau = np.asarray(traj.tau)
    xyz = cartesian_positions(traj)
    order = np.argsort(tau)
    return CubicSpline(tau[order], xyz[order], axis=0), (float(tau.min()), float(tau.max()))


def rollout_deviation(traj_a: Trajectory, traj_b: Trajectory, samples=2000):
    """
    delta_r(tau) = |r_a(tau) - r_b(tau)| in Cartesian space on the shared tau range.

    Both trajectories are interpolated with cubic splines onto `samples` uniformly
    spaced affine parameters.
    """
    spline_a, (lo_a, hi_a) = _spline(traj_a)
    spline_b, (lo_b, hi_b) = _spline(traj_b)
    lo, hi = max(lo_a, lo_b), min(hi_a, hi_b)
    if not hi > lo:
        raise DomainError("trajectories share no affine-parameter range: [{}, {}] vs [{}, {}]"
                          .format(lo_a, hi_a, lo_b, hi_b))
    tau = np.linspace(lo, hi, int(samples))
    delta = np.linalg.norm(spline_a(tau) - spline_b(tau), axis=1)
    return DeviationSeries(tau, delta)


@dataclass
class DeviationResult:
    """Separation S^mu and its covariant rate DS^mu/dtau at the sampled tau."""

    tau: np.ndarray
    separation: np.ndarray
    rate: np.ndarray
    positions: np.ndarray
    nfev: int

    def proper_separation(self, metric_field):
        """Separation in an orthonormal frame of the spatial metric, (K, 3)."""
        g = metric_field(torch.as_tensor(self.positions))
        return orthonormal_components(g, torch.as_tensor(self.separation)).numpy()


def orthonormal_components(g, S):
    """sqrt(gamma_ij) S^j with gamma the spatial block of g; batched over leading dims."""
    gamma = g[..., 1:, 1:]
    evals, evecs = torch.linalg.eigh(gamma)
    if bool((evals <= 0).any()):
        raise DomainError("spatial metric is not positive definite")
    root = evecs @ torch.diag_embed(evals.sqrt()) @ evecs.transpose(-1, -2)
    return torch.einsum("...ij,...j->...i", root, S[..., 1:])


def geodesic_deviation(traj: Trajectory, S0, dS0, field, rtol=1e-10, atol=1e-12,
                       method="DOP853"):
    """
    Integrate D^2 S^mu / dtau^2 = R^mu_{abc} X^a X^b S^c along `traj`.

    The state is (S, W) with W = DS/dtau, so in coordinates
    dS/dtau = W - Gamma(X, S) and dW/dtau = R(X, X) S - Gamma(X, W).

    Args:
        traj (Trajectory): reference geodesic with tangent X.
        S0, dS0: initial separation and its covariant rate, (4,) each.
        field (callable): metric field of the same chart.
    """
    jet = metric_jet_fn(field, order=2)

    def rhs(tau, y):
        ref = torch.as_tensor(traj.state_at(tau), dtype=torch.float64)
        x, X = ref[:4], ref[4:]
        check_field_domain(field, x)
        with torch.no_grad():
            g, jac, hess = jet(x)
        gamma = christoffel_symbols(g, jac)
        R = riemann_tensor(g, jac, hess)
        s = torch.as_tensor(y[:4])
        w = torch.as_tensor(y[4:])
        ds = w - torch.einsum("mab,a,b->m", gamma, X, s)
        dw = torch.einsum("mabc,a,b,c->m", R, X, X, s) - torch.einsum("mab,a,b->m", gamma, X, w)
        return torch.cat([ds, dw]).numpy()

    y0 = np.concatenate([np.asarray(S0, dtype=np.float64), np.asarray(dS0, dtype=np.float64)])
    span = (float(traj.tau[0]), float(traj.tau[-1]))
    sol = solve_ivp(rhs, span, y0, method=method, rtol=rtol, atol=atol, t_eval=traj.tau)
    if not sol.success:
        raise IntegrationError("geodesic deviation failed: {}".format(sol.message))
    return DeviationResult(
        tau=sol.t,
        separation=sol.y[:4].T,
        rate=sol.y[4:].T,
        positions=traj.positions[:len(sol.t)],
        nfev=sol.nfev,
    )

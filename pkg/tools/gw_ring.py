#!/usr/bin/env python3
# -*- coding:utf-8 -*-
"""Deformation of a ring of free test particles by the TT plane wave."""

import os
from loguru import logger

import numpy as np

from einfields.geodesics import (
    ChristoffelProvider,
    GeodesicState,
    geodesic_deviation,
    integrate
)
from einfields.gw import ring_area, ring_points, ring_trajectories
from einfields.metrics import ChartId
from einfields.utils import ConfigError, write_csv

__all__ = ["add_arguments", "deviation_ring", "run"]


def add_arguments(parser):
    parser.add_argument(
        "--deviation", default=False, action="store_true",
        help="cross-check the closed form with the geodesic deviation equation",
    )


def _long_rows(times, points):
    """(T, N, 2) positions -> rows of (t, particle, x, y)."""
    T, N, _ = points.shape
    tt = np.repeat(times, N)
    idx = np.tile(np.arange(N), T)
    return np.column_stack([tt, idx, points.reshape(-1, 2)])


def deviation_ring(exp, ring, times):
    """Proper ring positions (T, N, 2) from the deviation of geodesics about the origin."""
    params = exp.get_params()
    provider = ChristoffelProvider.analytic(ChartId.GW_CARTESIAN_TT, params)
    rest = GeodesicState((times[0], 0.0, 0.0, 0.0), (1.0, 0.0, 0.0, 0.0), float(times[0]))
    traj = integrate(provider, rest, float(times[-1]), rtol=exp.rtol, atol=exp.atol,
                     method=exp.integrator, max_step=(times[-1] - times[0]) / (len(times) - 1))
    field = provider.field
    out = np.empty((len(times), len(ring), 2))
    for k, (x0, y0) in enumerate(ring):
        dev = geodesic_deviation(traj, (0.0, x0, y0, 0.0), np.zeros(4), field,
                                 rtol=exp.rtol, atol=exp.atol)
        proper = dev.proper_separation(field)
        for c in range(2):
            out[:, k, c] = np.interp(times, dev.tau, proper[:, c])
    return out


@logger.catch(reraise=True)
def run(exp, args):
    if exp.get_chart() is not ChartId.GW_CARTESIAN_TT:
        raise ConfigError("gw-ring needs the GWCartesianTT chart, got {}".format(exp.chart))
    params = exp.get_params()
    ring = ring_points(exp.ring_points, exp.ring_radius)
    times = np.linspace(*exp.psi4_t[:2], int(exp.psi4_t[2]))
    closed = ring_trajectories(ring, times, 0.0, params)
    write_csv(os.path.join(args.out, "ring.csv"), ("t", "particle", "x", "y"),
              _long_rows(times, closed), {"params": params.as_dict(), "z": 0.0})
    area = ring_area(closed)
    logger.info("ring area varies by {:.3e} relative".format(
        float(np.ptp(area) / (np.pi * exp.ring_radius ** 2))))

    if args.deviation:
        ode = deviation_ring(exp, ring, times)
        write_csv(os.path.join(args.out, "ring_deviation.csv"), ("t", "particle", "x", "y"),
                  _long_rows(times, ode), {"params": params.as_dict(), "z": 0.0})
        logger.info("closed form vs deviation equation: max gap {:.3e}".format(
            float(np.abs(ode - closed).max())))
    return closed


if __name__ == "__main__":
    import sys

    from einfields.tools.cli import dispatch

    sys.exit(dispatch(["gw-ring"] + sys.argv[1:]))

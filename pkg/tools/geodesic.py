#!/usr/bin/env python3
# -*- coding:utf-8 -*-
"""Integrate geodesics against the analytic or a learned connection."""

import os
from loguru import logger
from tabulate import tabulate

from einfields.geodesics import (
    ChristoffelProvider,
    circular_b0,
    integrate,
    kerr_equatorial_ic,
    rollout_deviation,
    schwarzschild_ic
)
from einfields.metrics import ChartId
from einfields.utils import ConfigError, load_einfield

__all__ = ["add_arguments", "initial_states", "run"]


def add_arguments(parser):
    parser.add_argument(
        "-c", "--ckpt", default=None, type=str,
        help="EINF file; the learned rollout is compared with the analytic one",
    )
    parser.add_argument(
        "--circular", default=False, action="store_true",
        help="launch with the circular-orbit speed of the configured radius",
    )


def initial_states(exp, circular=False):
    """(name, GeodesicState) pairs of an experiment."""
    chart = exp.get_chart()
    params = exp.get_params()
    if exp.kerr_orbits:
        if chart not in (ChartId.KERR_BL, ChartId.SCHWARZSCHILD_SPHERICAL):
            raise ConfigError("kerr_orbits need the KerrBL or SchwarzschildSpherical chart")
        return [
            (name, kerr_equatorial_ic(E, Lz, r0, params, chart))
            for name, E, Lz, r0 in exp.kerr_orbits
        ]
    if chart is not ChartId.SCHWARZSCHILD_SPHERICAL:
        raise ConfigError("orbit launch parameters need the SchwarzschildSpherical chart, "
                          "or set kerr_orbits")
    b0 = exp.orbit_b0
    if circular or b0 is None:
        b0 = circular_b0(exp.M)
    name = "circular" if b0 == circular_b0(exp.M) else "orbit"
    return [(name, schwarzschild_ic(exp.orbit_a0, b0, exp.M, exp.orbit_phi0))]


@logger.catch(reraise=True)
def run(exp, args):
    analytic = ChristoffelProvider.analytic(exp.get_chart(), exp.get_params())
    learned = None
    if args.ckpt is not None:
        model, _ = load_einfield(args.ckpt)
        model.eval()
        learned = ChristoffelProvider.from_model(model)

    options = dict(rtol=exp.rtol, atol=exp.atol, method=exp.integrator)
    rows = []
    for name, ic in initial_states(exp, args.circular):
        logger.info("{}: x={}, v={}".format(name, ic.x.tolist(), ic.v.tolist()))
        traj = integrate(analytic, ic, exp.tau_end, **options)
        traj.to_csv(os.path.join(args.out, "trajectory_{}.csv".format(name)), {"orbit": name})
        r = traj.positions[:, 1]
        rows.append((name, "analytic", traj.stats["steps"], traj.stats["rejects_estimate"],
                     r.min(), r.max(), traj.stats["drift_norm"]))
        if learned is None:
            continue
        rollout = integrate(learned, ic, exp.tau_end, **options)
        rollout.to_csv(os.path.join(args.out, "trajectory_{}_learned.csv".format(name)),
                       {"orbit": name, "ckpt": args.ckpt})
        deviation = rollout_deviation(traj, rollout, exp.deviation_samples)
        deviation.to_csv(os.path.join(args.out, "deviation_{}.csv".format(name)),
                         {"orbit": name, "ckpt": args.ckpt})
        r = rollout.positions[:, 1]
        rows.append((name, "learned", rollout.stats["steps"], rollout.stats["rejects_estimate"],
                     r.min(), r.max(), rollout.stats["drift_norm"]))
        logger.info("{}: max delta_r {:.3e}, {} steps outside the training box".format(
            name, deviation.max(), rollout.stats.get("outside_box", 0)))

    logger.info("\n" + tabulate(
        rows,
        headers=["orbit", "connection", "steps", "rejects (est.)", "r_min", "r_max", "norm drift"],
        tablefmt="fancy_grid", floatfmt=".6g"))
    return rows


if __name__ == "__main__":
    import sys

    from einfields.tools.cli import dispatch

    sys.exit(dispatch(["geodesic"] + sys.argv[1:]))

#!/usr/bin/env python3
# -*- coding:utf-8 -*-
"""Weyl scalar Psi4 of the TT plane wave over a (z, t) grid."""

import os
from loguru import logger

import numpy as np

from einfields.gw import ComplexStrain, psi4_grid
from einfields.metrics import ChartId
from einfields.utils import ConfigError

from einfields.tools.cli import load_field

__all__ = ["add_arguments", "run"]


def add_arguments(parser):
    parser.add_argument("-c", "--ckpt", default=None, type=str, help="EINF file, else analytic")
    parser.add_argument(
        "--weyl", default=False, action="store_true",
        help="contract the Weyl tensor with the null tetrad instead of differentiating the strain",
    )


@logger.catch(reraise=True)
def run(exp, args):
    if exp.get_chart() is not ChartId.GW_CARTESIAN_TT:
        raise ConfigError("psi4 needs the GWCartesianTT chart, got {}".format(exp.chart))
    field, model = load_field(exp, args.ckpt)
    z = np.linspace(*exp.psi4_z[:2], int(exp.psi4_z[2]))
    t = np.linspace(*exp.psi4_t[:2], int(exp.psi4_t[2]))
    if args.weyl:
        grid = psi4_grid(z, t, field=field, progress=True)
    elif model is None:
        grid = psi4_grid(z, t, strain=ComplexStrain.plane_wave(exp.get_params(),
                                                               exp.strain_convention))
    else:
        grid = psi4_grid(z, t, strain=ComplexStrain.from_metric(field, exp.strain_convention))
    route = "weyl" if args.weyl else "strain"
    path = grid.to_csv(os.path.join(args.out, "psi4.csv"), {"route": route, "ckpt": args.ckpt})
    logger.info("max |psi4| = {:.4e} ({} route), wrote {}".format(
        float(np.abs(grid.values).max()), route, path))
    return grid


if __name__ == "__main__":
    import sys

    from einfields.tools.cli import dispatch

    sys.exit(dispatch(["psi4"] + sys.argv[1:]))

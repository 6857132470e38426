#!/usr/bin/env python3
# -*- coding:utf-8 -*-
"""Spin-weight -2 mode time series of the strain on an extraction sphere."""

import os
from loguru import logger

import numpy as np

from einfields.gw import ComplexStrain, SphereQuadrature, gram_matrix, mode_series
from einfields.metrics import ChartId
from einfields.utils import ConfigError

from einfields.tools.cli import load_field

__all__ = ["add_arguments", "run"]


def add_arguments(parser):
    parser.add_argument("-c", "--ckpt", default=None, type=str, help="EINF file, else analytic")
    parser.add_argument(
        "--mass", default=1.0, type=float, help="mass scale of the r / M normalisation"
    )


@logger.catch(reraise=True)
def run(exp, args):
    if exp.get_chart() is not ChartId.GW_CARTESIAN_TT:
        raise ConfigError("swsh-modes needs the GWCartesianTT chart, got {}".format(exp.chart))
    quad = SphereQuadrature(exp.quad_theta, exp.quad_phi)
    l = exp.mode_l  # noqa: E741
    gram = gram_matrix(-2, [(l, m) for m in range(-l, l + 1)], quad)
    logger.info("SWSH gram matrix deviates from identity by {:.3e}".format(
        float(np.abs(gram - np.eye(len(gram))).max())))

    field, model = load_field(exp, args.ckpt)
    if model is None:
        strain = ComplexStrain.plane_wave(exp.get_params(), exp.strain_convention)
    else:
        strain = ComplexStrain.from_metric(field, exp.strain_convention)
    times = np.linspace(*exp.psi4_t[:2], int(exp.psi4_t[2]))
    series = mode_series(strain, l, exp.mode_m, exp.extraction_radius, times, quad,
                         mass=args.mass)
    path = series.to_csv(
        os.path.join(args.out, "modes_l{}_m{}.csv".format(l, exp.mode_m)),
        {"r": exp.extraction_radius, "convention": exp.strain_convention, "ckpt": args.ckpt},
    )
    logger.info("max |h^{{{},{}}}| = {:.4e}, wrote {}".format(
        l, exp.mode_m, float(np.abs(series.values).max()), path))
    return series


if __name__ == "__main__":
    import sys

    from einfields.tools.cli import dispatch

    sys.exit(dispatch(["swsh-modes"] + sys.argv[1:]))

#!/usr/bin/env python3
# -*- coding:utf-8 -*-
"""Held-out MAE / relative-l2 of a trained field against the analytic metric."""

import os
from loguru import logger

import numpy as np

import torch

from einfields.evaluators import PlaneSpec, tomography
from einfields.utils import ConfigError, write_csv

from einfields.tools.cli import load_field

__all__ = ["add_arguments", "run"]


def add_arguments(parser):
    parser.add_argument("-c", "--ckpt", default=None, type=str, help="EINF file to evaluate")
    parser.add_argument(
        "--plane", default=None, type=str,
        help="two comma-separated axes, e.g. `1,3`, for an error slice through the box center",
    )
    parser.add_argument("--resolution", default=64, type=int, help="slice resolution")


def _plane(exp, spec):
    try:
        axes = tuple(int(a) for a in spec.split(","))
    except ValueError:
        raise ConfigError("--plane needs two integer axes, got {}".format(spec))
    if len(axes) != 2 or axes[0] == axes[1] or not all(0 <= a < 4 for a in axes):
        raise ConfigError("--plane needs two distinct axes in 0..3, got {}".format(spec))
    # mid-cell bounds keep open axes such as theta off their poles
    grid = exp.get_grid().staggered()
    lower, upper = grid.lower, grid.upper
    base = tuple(((lower + upper) / 2).tolist())
    ranges = tuple((float(lower[a]), float(upper[a])) for a in axes)
    return PlaneSpec(exp.get_chart(), base, axes, ranges)


@logger.catch(reraise=True)
def run(exp, args):
    field, model = load_field(exp, args.ckpt)
    evaluator = exp.get_evaluator(progress=True)
    mae, reports, summary = exp.eval(model if model is not None else field, evaluator)
    logger.info("\n" + summary)
    rows = np.array([[r.mae, r.rel_l2, r.points, r.components] for r in reports])
    write_csv(
        os.path.join(args.out, "eval.csv"),
        ("mae", "rel_l2", "points", "components"),
        rows,
        {"quantities": [r.quantity for r in reports], "chart": exp.chart, "ckpt": args.ckpt},
    )

    if args.plane is not None:
        plane = _plane(exp, args.plane)
        truth = exp.get_analytic_field()
        with torch.no_grad():
            result = tomography(field, truth, plane, args.resolution)
        path = result.write_csv(os.path.join(args.out, "tomography.csv"), {"ckpt": args.ckpt})
        logger.info("wrote error slice {}".format(path))
    return mae, reports


if __name__ == "__main__":
    import sys

    from einfields.tools.cli import dispatch

    sys.exit(dispatch(["eval"] + sys.argv[1:]))

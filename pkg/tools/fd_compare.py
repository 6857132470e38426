#!/usr/bin/env python3
# -*- coding:utf-8 -*-
"""Forward finite differences against exact jets for the metric Jacobian."""

import os
from loguru import logger
from tabulate import tabulate

import numpy as np

import torch

from einfields.autodiff import derivatives
from einfields.evaluators import fd_gradient, mae, observed_order, pull_inward
from einfields.tensor import pack_symmetric
from einfields.utils import load_einfield, write_csv

__all__ = ["add_arguments", "fd_errors", "run"]

# slopes are fitted on steps above the round-off floor
_SLOPE_MIN_STEP = 1e-2


def add_arguments(parser):
    parser.add_argument(
        "-c", "--ckpt", default=None, type=str,
        help="EINF file whose autodiff Jacobian is added to the comparison",
    )


def _packed(field):
    return lambda x: pack_symmetric(field(x))


def fd_errors(exp, points, orders, steps):
    """MAE of the forward-difference Jacobian for every (order, h); (len(orders), len(steps))."""
    field = _packed(exp.get_analytic_field())
    chart, params = exp.get_chart(), exp.get_params()
    upper = exp.get_grid().staggered().upper
    errors = np.zeros((len(orders), len(steps)))
    for i, order in enumerate(orders):
        for j, h in enumerate(steps):
            x = points
            for axis in range(4):
                x = pull_inward(x, axis, h, order, upper[axis])
            _, truth = derivatives(field, x, order=1)
            estimate = fd_gradient(field, x, h, order, chart, params)
            errors[i, j] = mae(truth, torch.movedim(estimate, 0, 1))
    return errors


@logger.catch(reraise=True)
def run(exp, args):
    points = exp.get_eval_points()
    if len(points) > exp.fd_points:
        idx = torch.linspace(0, len(points) - 1, exp.fd_points).round().long()
        points = points[idx]
    orders, steps = tuple(exp.fd_orders), tuple(exp.fd_steps)
    errors = fd_errors(exp, points, orders, steps)

    rows = [(order, h, errors[i, j]) for i, order in enumerate(orders)
            for j, h in enumerate(steps)]
    table = []
    for i, order in enumerate(orders):
        keep = [j for j, h in enumerate(steps) if h >= _SLOPE_MIN_STEP]
        slope = observed_order([steps[j] for j in keep], errors[i, keep])
        table.append(("forward-{}".format(order), errors[i].min(), slope))

    if args.ckpt is not None:
        model, _ = load_einfield(args.ckpt)
        model.eval()
        _, truth = derivatives(_packed(exp.get_analytic_field()), points, order=1)
        _, learned = derivatives(_packed(model.metric), points, order=1)
        err = mae(truth, learned.detach())
        rows.append((0, 0.0, err))
        table.append(("autodiff", err, float("nan")))

    write_csv(os.path.join(args.out, "fd_compare.csv"), ("order", "h", "mae"), rows,
              {"chart": exp.chart, "points": len(points), "ckpt": args.ckpt})
    logger.info("\n" + tabulate(table, headers=["method", "best MAE", "observed order"],
                                tablefmt="fancy_grid", floatfmt=".3e"))
    return errors


if __name__ == "__main__":
    import sys

    from einfields.tools.cli import dispatch

    sys.exit(dispatch(["fd-compare"] + sys.argv[1:]))

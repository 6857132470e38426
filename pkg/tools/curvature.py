#!/usr/bin/env python3
# -*- coding:utf-8 -*-
"""Curvature chain and invariants of a metric field on the held-out grid."""

import os
from loguru import logger
from tabulate import tabulate
from tqdm import tqdm

import torch

from einfields.diffgeo import check_field_domain, curvature_bundle
from einfields.utils import write_csv

from einfields.tools.cli import load_field

__all__ = ["CURVATURE_COLUMNS", "add_arguments", "run"]

CURVATURE_COLUMNS = (
    "x0", "x1", "x2", "x3", "kretschmann", "ricci_scalar", "max_abs_ricci", "max_abs_weyl",
)


def add_arguments(parser):
    parser.add_argument("-c", "--ckpt", default=None, type=str, help="EINF file, else analytic")
    parser.add_argument("--batch-size", dest="batch_size", default=2048, type=int)


def curvature_rows(field, points, batch_size=2048, progress=True):
    rows = []
    check_field_domain(field, points)
    for chunk in tqdm(torch.split(points, batch_size), desc="curvature", disable=not progress):
        with torch.no_grad():
            bundle = curvature_bundle(field, chunk)
        rows.append(torch.cat([
            chunk,
            bundle.kretschmann[:, None],
            bundle.ricci_scalar[:, None],
            bundle.ricci.abs().flatten(1).amax(1, keepdim=True),
            bundle.weyl.abs().flatten(1).amax(1, keepdim=True),
        ], dim=1))
    return torch.cat(rows)


@logger.catch(reraise=True)
def run(exp, args):
    field, _ = load_field(exp, args.ckpt)
    points = exp.get_eval_points()
    rows = curvature_rows(field, points, args.batch_size)
    path = write_csv(os.path.join(args.out, "curvature.csv"), CURVATURE_COLUMNS, rows,
                     {"chart": exp.chart, "ckpt": args.ckpt})
    stats = [
        (name, float(rows[:, k].min()), float(rows[:, k].max()))
        for k, name in enumerate(CURVATURE_COLUMNS) if k >= 4
    ]
    logger.info("\n" + tabulate(stats, headers=["invariant", "min", "max"],
                                tablefmt="fancy_grid", floatfmt=".4e"))
    logger.info("wrote {} points to {}".format(len(rows), path))
    return rows


if __name__ == "__main__":
    import sys

    from einfields.tools.cli import dispatch

    sys.exit(dispatch(["curvature"] + sys.argv[1:]))

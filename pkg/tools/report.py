#!/usr/bin/env python3
# -*- coding:utf-8 -*-
"""Storage of an EinField against the explicit grid it replaces."""

import json
import os
from loguru import logger

from einfields.evaluators import compression_report, format_compression
from einfields.utils import load_einfield

__all__ = ["add_arguments", "run"]


def add_arguments(parser):
    parser.add_argument(
        "-c", "--ckpt", default=None, type=str,
        help="EINF file, else a freshly built model of the configured architecture",
    )


@logger.catch(reraise=True)
def run(exp, args):
    if args.ckpt is not None:
        model, _ = load_einfield(args.ckpt)
    else:
        model = exp.get_model()
    components = 16 if exp.output_mode == "full16" else 10
    report = compression_report(model, exp.get_grid(), components)
    logger.info("\n" + format_compression(report))
    path = os.path.join(args.out, "compression.json")
    with open(path, "w") as f:
        json.dump(report, f, indent=2, sort_keys=True)
    return report


if __name__ == "__main__":
    import sys

    from einfields.tools.cli import dispatch

    sys.exit(dispatch(["report"] + sys.argv[1:]))

#!/usr/bin/env python3
# -*- coding:utf-8 -*-
"""Generate the Sobolev training set of an experiment."""

import os
from loguru import logger

from einfields.data import save_dataset

__all__ = ["add_arguments", "run"]


def add_arguments(parser):
    parser.add_argument(
        "--no-save", dest="save", default=True, action="store_false",
        help="only count and check the samples",
    )


@logger.catch(reraise=True)
def run(exp, args):
    dataset = exp.get_dataset(progress=True)
    logger.info("dataset: {} samples, derivative order {}, {} target".format(
        len(dataset), dataset.order, dataset.target))
    if args.save:
        path = save_dataset(dataset, os.path.join(args.out, "dataset.einfds"))
        logger.info("saved dataset to {}".format(path))
    return dataset


if __name__ == "__main__":
    import sys

    from einfields.tools.cli import dispatch

    sys.exit(dispatch(["gen"] + sys.argv[1:]))

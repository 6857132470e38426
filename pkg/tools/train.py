#!/usr/bin/env python3
# -*- coding:utf-8 -*-
"""Train an EinField on the analytic data of an experiment."""

import os
from loguru import logger

from einfields.core import Trainer
from einfields.data import load_dataset

__all__ = ["add_arguments", "run"]


def add_arguments(parser):
    parser.add_argument("--dataset", type=str, default=None, help="dataset written by `gen`")
    parser.add_argument(
        "--resume", default=False, action="store_true", help="resume training"
    )
    parser.add_argument("-c", "--ckpt", default=None, type=str, help="checkpoint file")
    parser.add_argument(
        "-e",
        "--start_epoch",
        default=None,
        type=int,
        help="resume training start epoch",
    )
    parser.add_argument(
        "-l",
        "--logger",
        type=str,
        help="Logger to be used for metrics: `tensorboard` or `none`.",
        default="tensorboard",
    )


@logger.catch(reraise=True)
def run(exp, args):
    # the trainer writes into <output_dir>/<experiment_name>
    out = os.path.abspath(args.out)
    exp.output_dir, args.experiment_name = os.path.split(out)
    dataset = load_dataset(args.dataset) if args.dataset else None
    trainer = Trainer(exp, args, dataset=dataset)
    return trainer.train()


if __name__ == "__main__":
    import sys

    from einfields.tools.cli import dispatch

    sys.exit(dispatch(["train"] + sys.argv[1:]))

#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import argparse
import importlib
import os
import random
import sys
from loguru import logger

import numpy as np

import torch

from einfields.exp import check_exp_value, get_exp
from einfields.utils import (
    ConfigError,
    configure_module,
    configure_omp,
    get_num_workers,
    load_einfield,
    set_f64_strict,
    setup_logger
)

__all__ = ["COMMANDS", "make_parser", "dispatch", "main", "load_field", "run_dir"]

# subcommand -> module under einfields.tools
COMMANDS = {
    "gen": "gen",
    "train": "train",
    "eval": "eval",
    "curvature": "curvature",
    "geodesic": "geodesic",
    "gw-ring": "gw_ring",
    "psi4": "psi4",
    "swsh-modes": "swsh_modes",
    "fd-compare": "fd_compare",
    "report": "report",
}

EXIT_OK, EXIT_FAILURE, EXIT_USAGE, EXIT_CONFIG = 0, 1, 2, 3


def _common_parser():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument(
        "-f", "--config", dest="exp_file", default=None, type=str,
        help="experiment description: an Exp python file or a run_config.txt",
    )
    parser.add_argument("-n", "--name", type=str, default=None, help="default experiment name")
    parser.add_argument("-o", "--out", type=str, default=None, help="output directory")
    parser.add_argument("--seed", type=int, default=None, help="override the experiment seed")
    parser.add_argument("--workers", type=int, default=None, help="worker threads, default all")
    parser.add_argument(
        "--f64-strict", dest="f64_strict", default=False, action="store_true",
        help="reject any non-finite intermediate",
    )
    return parser


def make_parser():
    parser = argparse.ArgumentParser("einfields")
    subparsers = parser.add_subparsers(dest="command")
    common = _common_parser()
    for command, module_name in COMMANDS.items():
        module = importlib.import_module("einfields.tools." + module_name)
        sub = subparsers.add_parser(command, parents=[common], help=module.__doc__)
        module.add_arguments(sub)
        sub.add_argument(
            "opts",
            help="Modify config options using the command-line",
            default=None,
            nargs=argparse.REMAINDER,
        )
        sub.set_defaults(run=module.run)
    return parser


def run_dir(exp, args):
    """EINFIELDS_OUT, then --out, then <output_dir>/<exp_name>."""
    out = os.environ.get("EINFIELDS_OUT") or args.out
    if not out:
        out = os.path.join(exp.output_dir, exp.exp_name)
    os.makedirs(out, exist_ok=True)
    return out


def load_field(exp, ckpt=None):
    """
    Metric field to analyse: the trained EinField in `ckpt`, or the analytic metric
    of the experiment.

    Return:
        (field, model): model is None for the analytic field.
    """
    if ckpt is None:
        return exp.get_analytic_field(), None
    model, meta = load_einfield(ckpt)
    model.eval()
    logger.info("loaded {} ({})".format(ckpt, meta.get("exp_name", "no metadata")))
    return model.metric_field(), model


def _seed_everything(seed):
    random.seed(seed)
    np.random.seed(seed % (1 << 32))
    torch.manual_seed(seed)


def dispatch(argv):
    """Run one subcommand; returns the process exit code."""
    if not argv or argv[0] not in COMMANDS:
        sys.stderr.write("usage: einfields {{{}}} [options] [key value ...]\n".format(
            ",".join(COMMANDS)))
        if argv and argv[0] not in ("-h", "--help"):
            sys.stderr.write("einfields: unknown command {!r}\n".format(argv[0]))
        return EXIT_USAGE

    args = make_parser().parse_args(argv)
    try:
        exp = get_exp(args.exp_file, args.name)
        exp.merge(args.opts or [])
        if args.seed is not None:
            exp.seed = args.seed
        check_exp_value(exp)
        out = run_dir(exp, args)
    except ConfigError as e:
        logger.error("invalid configuration: {}".format(e))
        return EXIT_CONFIG
    except ImportError as e:
        logger.error(str(e))
        return EXIT_FAILURE

    args.out = out
    args.workers = get_num_workers(args.workers)
    set_f64_strict(args.f64_strict)
    configure_omp(args.workers)
    _seed_everything(exp.seed)
    setup_logger(out, filename="{}_log.txt".format(COMMANDS[args.command]), mode="a",
                 redirect=False)
    exp.dump_config(os.path.join(out, "run_config.txt"))
    logger.info("einfields {} -> {}".format(args.command, out))

    try:
        args.run(exp, args)
    except ConfigError as e:
        logger.error("invalid configuration: {}".format(e))
        return EXIT_CONFIG
    except Exception:  # noqa: B902
        logger.opt(exception=True).error("einfields {} failed".format(args.command))
        return EXIT_FAILURE
    return EXIT_OK


def main():
    configure_module()
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()

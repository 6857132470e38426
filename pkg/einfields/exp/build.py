#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# Copyright (c) Megvii Inc. All rights reserved.

import importlib
import os
import sys

from einfields.utils import ConfigError

__all__ = ["get_exp", "get_exp_by_file", "get_exp_by_name", "get_exp_by_dump"]


def get_exp_by_file(exp_file):
    try:
        sys.path.append(os.path.dirname(exp_file))
        current_exp = importlib.import_module(os.path.basename(exp_file).split(".")[0])
        exp = current_exp.Exp()
    except Exception:
        raise ImportError("{} doesn't contains class named 'Exp'".format(exp_file))
    return exp


def _exp_class(dump_file):
    from .einfield_base import Exp

    with open(dump_file, "r") as f:
        first = f.readline().strip()
    if first.startswith("# exp_class:"):
        module_name, _, cls_name = first.split(":", 1)[1].strip().rpartition(".")
        try:
            return getattr(importlib.import_module(module_name), cls_name)
        except (ImportError, AttributeError):
            pass
    return Exp


def get_exp_by_dump(dump_file):
    """Rebuild an experiment from a `run_config.txt` written by `Exp.dump_config`."""
    if not os.path.isfile(dump_file):
        raise ConfigError("config file {} does not exist".format(dump_file))
    return _exp_class(dump_file)().load_config(dump_file)


def get_exp_by_name(exp_name):
    exp = exp_name.replace("-", "_")  # convert string like "kerr-bl" to "kerr_bl"
    module_name = ".".join(["einfields", "exp", "default", exp])
    try:
        exp_object = importlib.import_module(module_name).Exp()
    except ModuleNotFoundError:
        raise ConfigError("unknown experiment name {}".format(exp_name))
    return exp_object


def get_exp(exp_file=None, exp_name=None):
    """
    get Exp object by file or name. If exp_file and exp_name
    are both provided, get Exp by exp_file.

    Args:
        exp_file (str): an Exp python file, or a run_config.txt dump.
        exp_name (str): name of a default experiment, e.g. "schwarzschild-desk".
    """
    if exp_file is not None:
        if exp_file.endswith(".py"):
            return get_exp_by_file(exp_file)
        return get_exp_by_dump(exp_file)
    if exp_name is not None:
        return get_exp_by_name(exp_name)
    from .einfield_base import Exp

    return Exp()

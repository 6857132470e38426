#!/usr/bin/env python3
# Copyright (c) Megvii Inc. All rights reserved.

import ast
import os
import pprint
from abc import ABCMeta, abstractmethod
from typing import List, Tuple
from tabulate import tabulate

import torch
from torch.nn import Module

from einfields.utils import ConfigError, LRScheduler

__all__ = ["BaseExp"]

_TRUE = ("1", "true", "yes", "on")
_FALSE = ("0", "false", "no", "off")


def _cast(value, like):
    """Convert a command-line string to the type of an existing attribute value."""
    if not isinstance(value, str):
        return value
    if isinstance(like, bool):
        if value.lower() in _TRUE:
            return True
        if value.lower() in _FALSE:
            return False
        raise ConfigError("cannot read {!r} as a boolean".format(value))
    if isinstance(like, str):
        return value
    if isinstance(like, (int, float)):
        try:
            number = float(value)
        except ValueError:
            raise ConfigError("cannot read {!r} as {}".format(value, type(like).__name__))
        if isinstance(like, int):
            if not number.is_integer():
                raise ConfigError("{!r} is not an integer".format(value))
            return int(number)
        return number
    try:
        return ast.literal_eval(value)
    except (ValueError, SyntaxError):
        return value


class BaseExp(metaclass=ABCMeta):
    """Basic class for any experiment."""

    def __init__(self):
        self.seed = 0
        self.output_dir = "./EinFields_outputs"
        self.print_interval = 10
        self.eval_interval = 10

    @abstractmethod
    def get_model(self) -> Module:
        pass

    @abstractmethod
    def get_dataset(self, progress: bool = True):
        pass

    @abstractmethod
    def get_optimizer(self, model: Module) -> torch.optim.Optimizer:
        pass

    @abstractmethod
    def get_lr_scheduler(self) -> LRScheduler:
        pass

    @abstractmethod
    def get_evaluator(self):
        pass

    @abstractmethod
    def eval(self, model, evaluator):
        pass

    def config_items(self):
        return [(k, v) for k, v in vars(self).items() if not k.startswith("_")]

    def __repr__(self):
        table_header = ["keys", "values"]
        exp_table = [(str(k), pprint.pformat(v)) for k, v in self.config_items()]
        return tabulate(exp_table, headers=table_header, tablefmt="fancy_grid")

    def merge(self, cfg_list):
        assert len(cfg_list) % 2 == 0, f"length must be even, check value here: {cfg_list}"
        for k, v in zip(cfg_list[0::2], cfg_list[1::2]):
            if not hasattr(self, k):
                raise ConfigError("unknown config key {}".format(k))
            src_value = getattr(self, k)

            if isinstance(src_value, (List, Tuple)) and isinstance(v, str):
                if v.lstrip().startswith(("((", "[(", "[[")):
                    v = ast.literal_eval(v)
                else:
                    items = [t.strip() for t in v.strip("[]()").split(",") if t.strip()]
                    if len(src_value) > 0:
                        items = [_cast(t, src_value[0]) for t in items]
                    else:
                        items = [_cast(t, None) for t in items]
                    v = type(src_value)(items)
            else:
                v = _cast(v, src_value)
            setattr(self, k, v)

    def dump_config(self, path):
        """Write every attribute as a `key: repr(value)` line, readable by `get_exp`."""
        dirname = os.path.dirname(path)
        if dirname:
            os.makedirs(dirname, exist_ok=True)
        with open(path, "w") as f:
            f.write("# exp_class: {}.{}\n".format(type(self).__module__, type(self).__name__))
            for k, v in self.config_items():
                f.write("{}: {!r}\n".format(k, v))
        return path

    def load_config(self, path):
        """Inverse of `dump_config`: set attributes from a run_config.txt file."""
        with open(path, "r") as f:
            for lineno, line in enumerate(f, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                key, sep, value = line.partition(":")
                if not sep:
                    raise ConfigError("{}:{}: expected `key: value`".format(path, lineno))
                try:
                    setattr(self, key.strip(), ast.literal_eval(value.strip()))
                except (ValueError, SyntaxError) as e:
                    raise ConfigError("{}:{}: cannot parse value of {} ({})".format(
                        path, lineno, key.strip(), e))
        return self

#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# Copyright (c) Megvii Inc. All rights reserved.

import os
from loguru import logger
import psutil

import torch

from .errors import NonFiniteError

__all__ = [
    "configure_module",
    "configure_omp",
    "get_num_workers",
    "set_f64_strict",
    "is_f64_strict",
    "check_finite",
]

_F64_STRICT = False


def configure_omp(num_threads=None):
    """
    Configure intra-op threads of torch and `OMP_NUM_THREADS` if it is not configured.

    Args:
        num_threads (int): number of threads, available cores by default.
    """
    num_threads = get_num_workers(num_threads)
    if "OMP_NUM_THREADS" not in os.environ:
        os.environ["OMP_NUM_THREADS"] = str(num_threads)
    torch.set_num_threads(num_threads)
    logger.info("torch uses {} threads".format(num_threads))


def configure_module(ulimit_value=8192):
    """
    Configure pytorch module environment. Default dtype is set to float64.

    Args:
        ulimit_value(int): default open file number on linux. Default value: 8192.
    """
    try:
        import resource

        rlimit = resource.getrlimit(resource.RLIMIT_NOFILE)
        resource.setrlimit(resource.RLIMIT_NOFILE, (ulimit_value, rlimit[1]))
    except Exception:
        # Exception might be raised in Windows OS or rlimit reaches max limit number.
        pass

    torch.set_default_dtype(torch.float64)


def get_num_workers(workers=None):
    if workers is None or workers <= 0:
        return psutil.cpu_count(logical=False) or os.cpu_count() or 1
    return int(workers)


def set_f64_strict(enabled=True):
    global _F64_STRICT
    _F64_STRICT = bool(enabled)


def is_f64_strict():
    return _F64_STRICT


def check_finite(tensor, what="tensor"):
    """
    Check that every entry of `tensor` is finite.

    In strict mode a `NonFiniteError` is raised, otherwise a warning is logged.

    Return:
        bool: True if all entries are finite.
    """
    if bool(torch.isfinite(torch.as_tensor(tensor)).all()):
        return True
    if _F64_STRICT:
        raise NonFiniteError("non-finite values found in {}".format(what))
    logger.warning("non-finite values found in {}".format(what))
    return False

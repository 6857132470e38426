#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import json
import os

import numpy as np

import torch

__all__ = ["write_csv", "read_csv"]


def write_csv(path, columns, rows, meta=None):
    """
    CSV with a one-line JSON header (prefixed by "# "), a column-name line and the rows.

    Args:
        columns (sequence of str): column names.
        rows (array-like (n, len(columns))): values, written with full float64 precision.
        meta (dict): run information for the header line.
    """
    if isinstance(rows, torch.Tensor):
        rows = rows.detach().cpu().numpy()
    rows = np.asarray(rows, dtype=np.float64).reshape(-1, len(columns))
    dirname = os.path.dirname(path)
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    header = "# {}\n{}".format(json.dumps(meta or {}, sort_keys=True), ",".join(columns))
    np.savetxt(path, rows, delimiter=",", header=header, comments="", fmt="%.17g")
    return path


def read_csv(path):
    """Return (meta, columns, rows) of a file written by `write_csv`."""
    with open(path, "r") as f:
        meta = json.loads(f.readline()[2:])
        columns = f.readline().strip().split(",")
    rows = np.loadtxt(path, delimiter=",", skiprows=2, ndmin=2)
    return meta, columns, rows

#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import json
import os
import struct
from dataclasses import dataclass
from typing import Optional

from loguru import logger
from tqdm import tqdm

import numpy as np

import torch
from torch.func import vmap

from einfields.autodiff import check_jet, jet_fn
from einfields.metrics import ChartId, MetricParams, check_domain, distortion_fn, metric_fn
from einfields.tensor import PACKED_INDEX, pack_symmetric
from einfields.utils.errors import CheckpointError

from .grid import GridSpec

__all__ = ["DS_MAGIC", "DS_VERSION", "Dataset", "generate_dataset", "save_dataset", "load_dataset"]

DS_MAGIC = b"EINF-DS"
DS_VERSION = 1
_PREFIX = struct.Struct("<7sII")
_BLOCKS = ("value", "jac", "hess")
_BLOCK_WIDTH = {"value": 10, "jac": 40, "hess": 100}
_PAIR_ROWS = torch.tensor([i for i, _ in PACKED_INDEX])
_PAIR_COLS = torch.tensor([j for _, j in PACKED_INDEX])


@dataclass
class Dataset:
    """
    Training samples on a grid: coordinates (N, 4) with targets value (N, 10),
    jac (N, 4, 10) and hess (N, 10, 10). Derivative pairs of the Hessian are packed in
    the same (00, 01, ..., 33) order as the components.
    """

    chart: ChartId
    params: MetricParams
    grid: GridSpec
    coords: torch.Tensor
    value: torch.Tensor
    jac: Optional[torch.Tensor] = None
    hess: Optional[torch.Tensor] = None
    target: str = "distortion"

    def __len__(self):
        return self.coords.shape[0]

    @property
    def order(self):
        if self.hess is not None:
            return 2
        return 1 if self.jac is not None else 0

    def blocks(self, idx=None):
        out = [self.value, self.jac, self.hess]
        if idx is None:
            return out
        return [b[idx] if b is not None else None for b in out]

    def batch(self, idx):
        return self.coords[idx], self.blocks(idx)


def _target_fn(chart, params, target):
    fn = distortion_fn(chart) if target == "distortion" else metric_fn(chart)
    return lambda x: pack_symmetric(fn(x, params))


def generate_dataset(chart, params: MetricParams, grid: GridSpec, order=2, target="distortion",
                     chunk_size=8192, progress=True):
    """
    Evaluate the target field and its analytic input derivatives at every grid node.

    Nodes are ordered row-major over (x0, x1, x2, x3). Any node outside the chart
    domain raises `DomainError` before evaluation starts.
    """
    chart = ChartId.parse(chart)
    assert order in (0, 1, 2), "derivative order must be 0, 1 or 2"
    assert target in ("distortion", "metric"), "unknown target {}".format(target)
    coords = grid.points()
    check_domain(chart, params, coords)

    stack = vmap(jet_fn(_target_fn(chart, params, target), order))
    blocks = [[] for _ in range(order + 1)]
    chunks = torch.split(coords, chunk_size)
    for chunk in tqdm(chunks, desc="gen {}".format(chart.value), disable=not progress):
        outs = stack(chunk)
        check_jet(*outs, x=chunk, what="target")
        for k, out in enumerate(outs):
            if k == 2:
                out = out[:, _PAIR_ROWS, _PAIR_COLS]
            blocks[k].append(out)
    blocks = [torch.cat(b) for b in blocks] + [None] * (2 - order)
    logger.info("generated {} samples on {} ({} target, order {})".format(
        len(coords), chart.value, target, order))
    return Dataset(chart, params, grid, coords, blocks[0], blocks[1], blocks[2], target)


def _header(ds: Dataset):
    present = [name for name, b in zip(_BLOCKS, ds.blocks()) if b is not None]
    return {
        "chart": ds.chart.value,
        "params": ds.params.as_dict(),
        "grid": ds.grid.as_dict(),
        "blocks": present,
        "target": ds.target,
        "count": len(ds),
    }


def save_dataset(ds: Dataset, path):
    """EINF-DS file: magic, u32 version, u32 header length, JSON header, f64 payload."""
    header = json.dumps(_header(ds), sort_keys=True).encode("utf-8")
    cols = [ds.coords] + [b.reshape(len(ds), -1) for b in ds.blocks() if b is not None]
    payload = torch.cat(cols, dim=1).numpy().astype("<f8")
    dirname = os.path.dirname(path)
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    with open(path, "wb") as f:
        f.write(_PREFIX.pack(DS_MAGIC, DS_VERSION, len(header)))
        f.write(header)
        f.write(payload.tobytes())
    return path


def load_dataset(path):
    with open(path, "rb") as f:
        prefix = f.read(_PREFIX.size)
        if len(prefix) != _PREFIX.size:
            raise CheckpointError("{} is too short for a dataset file".format(path))
        magic, version, length = _PREFIX.unpack(prefix)
        if magic != DS_MAGIC or version != DS_VERSION:
            raise CheckpointError("{} is not a version {} dataset file".format(path, DS_VERSION))
        try:
            header = json.loads(f.read(length).decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as e:
            raise CheckpointError("corrupt dataset header in {}: {}".format(path, e))
        raw = f.read()

    width = 4 + sum(_BLOCK_WIDTH[name] for name in header["blocks"])
    count = header["count"]
    if len(raw) != 8 * width * count:
        raise CheckpointError("truncated dataset payload in {}".format(path))
    data = torch.from_numpy(np.frombuffer(raw, dtype="<f8").copy()).reshape(count, width)

    blocks, col = {}, 4
    shapes = {"value": (10,), "jac": (4, 10), "hess": (10, 10)}
    for name in header["blocks"]:
        w = _BLOCK_WIDTH[name]
        blocks[name] = data[:, col:col + w].reshape((count,) + shapes[name])
        col += w
    return Dataset(
        chart=ChartId.parse(header["chart"]),
        params=MetricParams(**header["params"]),
        grid=GridSpec.from_dict(header["grid"]),
        coords=data[:, :4].contiguous(),
        value=blocks["value"],
        jac=blocks.get("jac"),
        hess=blocks.get("hess"),
        target=header.get("target", "distortion"),
    )

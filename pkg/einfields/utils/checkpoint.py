#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# Copyright (c) Megvii Inc. All rights reserved.
import json
import os
import shutil
import struct
from loguru import logger

import numpy as np

import torch

from .errors import CheckpointError

__all__ = [
    "EINF_MAGIC",
    "EINF_VERSION",
    "load_ckpt",
    "save_checkpoint",
    "save_einfield",
    "load_einfield",
    "storage_report",
]

EINF_MAGIC = b"EINF"
EINF_VERSION = 1
_PREFIX = struct.Struct("<4sII")


def load_ckpt(model, ckpt):
    model_state_dict = model.state_dict()
    load_dict = {}
    for key_model, v in model_state_dict.items():
        if key_model not in ckpt:
            logger.warning("{} is not in the ckpt, keeping its current value".format(key_model))
            continue
        v_ckpt = ckpt[key_model]
        if v.shape != v_ckpt.shape:
            raise CheckpointError("shape of {} is {} in checkpoint but {} in model".format(
                key_model, tuple(v_ckpt.shape), tuple(v.shape)))
        load_dict[key_model] = v_ckpt

    model.load_state_dict(load_dict, strict=False)
    return model


def save_checkpoint(state, is_best, save_dir, model_name=""):
    if not os.path.exists(save_dir):
        os.makedirs(save_dir)
    filename = os.path.join(save_dir, model_name + "_ckpt.pth")
    torch.save(state, filename)
    if is_best:
        best_filename = os.path.join(save_dir, "best_ckpt.pth")
        shutil.copyfile(filename, best_filename)


def _header(model, meta):
    state = model.state_dict()
    return {
        "format": EINF_VERSION,
        "arch": model.arch_dict(),
        "chart": model.chart.value,
        "params": model.params.as_dict(),
        "meta": meta or {},
        "tensors": [[name, list(t.shape)] for name, t in state.items()],
    }


def save_einfield(model, path, meta=None):
    """
    Write `model` as an EINF file: magic, u32 version, u32 header length, UTF-8 JSON
    header with sorted keys, then every state tensor as little-endian float64.
    Identical models give byte-identical files.
    """
    header = json.dumps(_header(model, meta), sort_keys=True).encode("utf-8")
    blob = [
        t.detach().cpu().to(torch.float64).numpy().astype("<f8").tobytes()
        for t in model.state_dict().values()
    ]
    dirname = os.path.dirname(path)
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    with open(path, "wb") as f:
        f.write(_PREFIX.pack(EINF_MAGIC, EINF_VERSION, len(header)))
        f.write(header)
        for b in blob:
            f.write(b)
    return path


def _read_header(f, path):
    prefix = f.read(_PREFIX.size)
    if len(prefix) != _PREFIX.size:
        raise CheckpointError("{} is too short for an EINF file".format(path))
    magic, version, length = _PREFIX.unpack(prefix)
    if magic != EINF_MAGIC:
        raise CheckpointError("{} is not an EINF file (magic {!r})".format(path, magic))
    if version != EINF_VERSION:
        raise CheckpointError("unsupported EINF version {} in {}".format(version, path))
    raw = f.read(length)
    if len(raw) != length:
        raise CheckpointError("truncated header in {}".format(path))
    try:
        return json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise CheckpointError("corrupt header in {}: {}".format(path, e))


def load_einfield(path):
    """
    Read an EINF file back into an `EinField`.

    Return:
        (EinField, dict): the model and the header metadata.
    """
    from einfields.metrics import MetricParams
    from einfields.models import build_einfield

    with open(path, "rb") as f:
        header = _read_header(f, path)
        try:
            params = MetricParams(**header["params"])
            specs = header["tensors"]
            arch = header["arch"]
            chart = header["chart"]
        except (KeyError, TypeError) as e:
            raise CheckpointError("incomplete header in {}: {}".format(path, e))
        state = {}
        for name, shape in specs:
            count = int(np.prod(shape)) if shape else 1
            raw = f.read(8 * count)
            if len(raw) != 8 * count:
                raise CheckpointError("truncated parameter blob in {} at {}".format(path, name))
            state[name] = torch.from_numpy(np.frombuffer(raw, dtype="<f8").copy()).reshape(shape)
        if f.read(1):
            raise CheckpointError("trailing bytes after parameter blob in {}".format(path))

    model = build_einfield(arch, chart, params, state["in_lower"], state["in_upper"])
    model.load_state_dict(state, strict=True)
    return model, header.get("meta", {})


def storage_report(model):
    """
    Parameter storage of a model.

    `float32_kib` counts 4 bytes per parameter; `payload_bytes` is the float64 blob
    actually written by `save_einfield`, buffers included.
    """
    count = sum(p.numel() for p in model.parameters())
    payload = 8 * sum(t.numel() for t in model.state_dict().values())
    return {
        "num_params": count,
        "float32_kib": count * 4 / 1024.0,
        "float64_kib": count * 8 / 1024.0,
        "payload_bytes": payload,
    }

#!/usr/bin/env python
# -*- encoding: utf-8 -*-
# Copyright (c) Megvii Inc. All rights reserved.

from loguru import logger

import torch
import torch.nn as nn
from torch.func import vmap

from einfields.autodiff import jet_fn, metric_jet
from einfields.metrics import ChartId, MetricParams, background_fn
from einfields.tensor import PACKED_INDEX, pack_symmetric, unpack_symmetric
from einfields.utils.errors import ConfigError

from .network_blocks import DenseBlock, init_dense

__all__ = [
    "OUTPUT_DIMS",
    "EinField",
    "LearnedMetric",
    "parameter_count",
    "build_einfield",
    "forward_jet",
    "packed_jets",
]

OUTPUT_DIMS = {"packed10": 10, "full16": 16}
_PAIR_ROWS = torch.tensor([i for i, _ in PACKED_INDEX])
_PAIR_COLS = torch.tensor([j for _, j in PACKED_INDEX])


def parameter_count(widths):
    """sum of w_i * w_{i+1} + w_{i+1} over consecutive layer widths."""
    return sum(a * b + b for a, b in zip(widths[:-1], widths[1:]))


class EinField(nn.Module):
    """
    Fully connected field mapping 4 coordinates to a symmetric 4x4 tensor.

    `depth` counts the width x width layers after the input layer. In the default
    `target="distortion"` mode the network predicts g - background and the analytic
    background of `chart` is added back in `metric`; `target="metric"` predicts the metric itself.
    """

    def __init__(
        self,
        depth=3,
        width=64,
        act="silu",
        output_mode="packed10",
        target="distortion",
        chart=ChartId.SCHWARZSCHILD_SPHERICAL,
        params=None,
        lower=None,
        upper=None,
        zeta0=30.0,
        s0=10.0,
        seed=0,
    ):
        super().__init__()
        if depth < 0 or width < 1:
            raise ConfigError("need depth >= 0 and width >= 1, got {} / {}".format(depth, width))
        if output_mode not in OUTPUT_DIMS:
            raise ConfigError("unknown output mode {}".format(output_mode))
        if target not in ("distortion", "metric"):
            raise ConfigError("unknown target {}".format(target))
        self.depth = depth
        self.width = width
        self.act = act
        self.output_mode = output_mode
        self.target = target
        self.chart = ChartId.parse(chart)
        self.params = params if params is not None else MetricParams()
        self.zeta0 = zeta0
        self.s0 = s0

        blocks = [DenseBlock(4, width, act, zeta0, s0)]
        for _ in range(depth):
            blocks.append(DenseBlock(width, width, act, zeta0, s0))
        self.hidden = nn.Sequential(*blocks)
        self.head = nn.Linear(width, OUTPUT_DIMS[output_mode])

        lower = torch.full((4,), -1.0) if lower is None else torch.as_tensor(lower)
        upper = torch.full((4,), 1.0) if upper is None else torch.as_tensor(upper)
        self.register_buffer("in_lower", lower.to(torch.float64).clone())
        self.register_buffer("in_upper", upper.to(torch.float64).clone())
        self.double()
        self.init_weights(seed)

    @property
    def widths(self):
        return [4] + [self.width] * (self.depth + 1) + [OUTPUT_DIMS[self.output_mode]]

    def num_parameters(self):
        return sum(p.numel() for p in self.parameters())

    def init_weights(self, seed=0):
        generator = torch.Generator().manual_seed(int(seed))
        for i, block in enumerate(self.hidden):
            init_dense(block.fc, generator, self.act, first=i == 0, zeta0=self.zeta0)
        init_dense(self.head, generator, "silu" if self.act == "sine" else self.act)

    def zero_(self):
        with torch.no_grad():
            for p in self.parameters():
                p.zero_()
        return self

    def normalize(self, x):
        span = self.in_upper - self.in_lower
        return 2.0 * (x - self.in_lower) / span - 1.0

    def in_box(self, x):
        return ((x >= self.in_lower) & (x <= self.in_upper)).all(-1)

    def forward(self, x):
        return self.head(self.hidden(self.normalize(x)))

    def output_matrix(self, x):
        out = self(x)
        if self.output_mode == "packed10":
            return unpack_symmetric(out)
        m = out.reshape(out.shape[:-1] + (4, 4))
        return 0.5 * (m + m.transpose(-1, -2))

    def packed_output(self, x):
        return pack_symmetric(self.output_matrix(x))

    def background(self, x):
        return background_fn(self.chart)(x, self.params)

    def distortion(self, x):
        out = self.output_matrix(x)
        return out if self.target == "distortion" else out - self.background(x)

    def metric(self, x):
        out = self.output_matrix(x)
        return out + self.background(x) if self.target == "distortion" else out

    def metric_field(self):
        return LearnedMetric(self)

    def arch_dict(self):
        return {
            "depth": self.depth,
            "width": self.width,
            "act": self.act,
            "output_mode": self.output_mode,
            "target": self.target,
            "zeta0": self.zeta0,
            "s0": self.s0,
        }


class LearnedMetric:
    """
    Metric field of a trained `EinField`, callable like the analytic catalog fields.

    `check` never rejects a point; queries outside the training box are counted and
    logged once per call.
    """

    def __init__(self, model: EinField):
        self.model = model
        self.chart = model.chart
        self.params = model.params
        self.outside = 0

    def __call__(self, x):
        return self.model.metric(x)

    def check(self, x):
        inside = self.model.in_box(torch.as_tensor(x, dtype=torch.float64))
        n_out = int((~inside).sum())
        if n_out:
            self.outside += n_out
            logger.warning("{} point(s) outside the training box of the field".format(n_out))
        return inside


def build_einfield(arch, chart, params, lower, upper, seed=0):
    """Construct an `EinField` from an architecture dict as stored in checkpoints."""
    return EinField(
        depth=arch["depth"],
        width=arch["width"],
        act=arch.get("act", "silu"),
        output_mode=arch.get("output_mode", "packed10"),
        target=arch.get("target", "distortion"),
        chart=chart,
        params=params,
        lower=lower,
        upper=upper,
        zeta0=arch.get("zeta0", 30.0),
        s0=arch.get("s0", 10.0),
        seed=seed,
    )


def forward_jet(model: EinField, x):
    """MetricJet of the reconstructed metric, background jets included."""
    return metric_jet(model.metric, x)


def packed_jets(model: EinField, x, order=2):
    """
    Network prediction in target space with input derivatives, for Sobolev supervision.

    Return:
        list: value (N, 10), jac (N, 4, 10) and hess (N, 10, 10) up to `order`, with
        the Hessian derivative pairs packed like the metric components.
    """
    outs = list(vmap(jet_fn(model.packed_output, order))(x))
    if order >= 2:
        outs[2] = outs[2][:, _PAIR_ROWS, _PAIR_COLS]
    return outs

#!/usr/bin/env python
# -*- encoding: utf-8 -*-
# Copyright (c) Megvii Inc. All rights reserved.

import math

import torch
import torch.nn as nn

__all__ = ["Sine", "GaborWavelet", "get_activation", "DenseBlock", "init_dense"]


class Sine(nn.Module):
    """sin(zeta0 * x)"""

    def __init__(self, zeta0=30.0):
        super().__init__()
        self.zeta0 = zeta0

    def forward(self, x):
        return torch.sin(self.zeta0 * x)


class GaborWavelet(nn.Module):
    """Real Gabor wavelet cos(zeta0 * x) * exp(-(s0 * x)^2)."""

    def __init__(self, zeta0=10.0, s0=10.0):
        super().__init__()
        self.zeta0 = zeta0
        self.s0 = s0

    def forward(self, x):
        return torch.cos(self.zeta0 * x) * torch.exp(-((self.s0 * x) ** 2))


def get_activation(name="silu", zeta0=30.0, s0=10.0):
    if name == "silu":
        module = nn.SiLU()
    elif name == "sine":
        module = Sine(zeta0)
    elif name == "gabor":
        module = GaborWavelet(zeta0, s0)
    else:
        raise AttributeError("Unsupported act type: {}".format(name))
    return module


class DenseBlock(nn.Module):
    """A Linear -> activation block"""

    def __init__(self, in_features, out_features, act="silu", zeta0=30.0, s0=10.0):
        super().__init__()
        self.fc = nn.Linear(in_features, out_features)
        self.act = get_activation(act, zeta0=zeta0, s0=s0)

    def forward(self, x):
        return self.act(self.fc(x))


def init_dense(linear, generator, act="silu", first=False, zeta0=30.0):
    """
    Seeded uniform fan-in initialisation.

    SiLU and Gabor layers use U(-1/sqrt(fan_in), 1/sqrt(fan_in)). Sine layers follow
    the SIREN scheme: U(-1/fan_in, 1/fan_in) on the first layer, otherwise
    U(-sqrt(6/fan_in)/zeta0, sqrt(6/fan_in)/zeta0).
    """
    fan_in = linear.in_features
    bound = 1.0 / math.sqrt(fan_in)
    w_bound = bound
    if act == "sine":
        w_bound = 1.0 / fan_in if first else math.sqrt(6.0 / fan_in) / zeta0
    with torch.no_grad():
        w = torch.rand(linear.weight.shape, generator=generator, dtype=torch.float64)
        linear.weight.copy_((2.0 * w - 1.0) * w_bound)
        b = torch.rand(linear.bias.shape, generator=generator, dtype=torch.float64)
        linear.bias.copy_((2.0 * b - 1.0) * bound)

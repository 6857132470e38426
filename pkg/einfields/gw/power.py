#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import math

import torch

from einfields.autodiff import derivatives

from .strain import ComplexStrain

__all__ = ["radiated_power", "radiated_power_numeric"]


def radiated_power(h_plus_amp, h_cross_amp, omega):
    """
    Period-averaged flux (1/4) <h_plus'^2 + h_cross'^2> of a monochromatic plane wave.

    Equals omega^2 (A_plus^2 + A_cross^2) / 8, i.e. omega^2 A^2 / 4 for equal amplitudes.
    """
    return omega ** 2 * (h_plus_amp ** 2 + h_cross_amp ** 2) / 8.0


def radiated_power_numeric(strain: ComplexStrain, omega, z=0.0, samples=256):
    """
    Time average of (1/4)(h_plus'^2 + h_cross'^2) over one period at height z, with
    the time derivatives taken by forward-mode differentiation of the strain.
    """
    if omega == 0:
        return 0.0
    period = 2.0 * math.pi / omega
    pts = torch.zeros(samples, 4, dtype=torch.float64)
    pts[:, 0] = torch.arange(samples, dtype=torch.float64) * (period / samples)
    pts[:, 3] = z
    _, grad = derivatives(strain.components, pts, order=1)
    rates = grad[:, 0, :]
    return float(0.25 * (rates ** 2).sum(-1).mean())

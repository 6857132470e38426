#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import torch

from einfields.metrics import STRAIN_BOUND, MetricParams
from einfields.metrics.waves import tt_phase
from einfields.utils import DomainError

__all__ = ["STRAIN_CONVENTIONS", "ComplexStrain"]

# "minus": h = h_plus - i h_cross; "plus": h = h_plus + i h_cross
STRAIN_CONVENTIONS = ("minus", "plus")


class ComplexStrain:
    """
    The two polarisations of a strain field and their complex combination.

    `h_plus` and `h_cross` are single-point or batched callables (..., 4) -> (...).
    Under either convention Psi4 = -d_t^2 h_plus + i d_t^2 h_cross; it equals -h''
    for "minus" and -conj(h'') for "plus".
    """

    def __init__(self, h_plus, h_cross, convention="minus", bound=STRAIN_BOUND):
        if convention not in STRAIN_CONVENTIONS:
            raise DomainError("unknown strain convention {}, choose from {}".format(
                convention, STRAIN_CONVENTIONS))
        self.h_plus = h_plus
        self.h_cross = h_cross
        self.convention = convention
        self.bound = bound

    @classmethod
    def plane_wave(cls, params: MetricParams, convention="minus"):
        """A cos(omega (t - z)) polarisations of the TT plane wave."""
        return cls(
            lambda x: params.h_plus * torch.cos(tt_phase(x, params)),
            lambda x: params.h_cross * torch.cos(tt_phase(x, params)),
            convention,
        )

    @classmethod
    def from_metric(cls, field, convention="minus"):
        """Read h_plus = g_xx - 1 and h_cross = g_xy off a TT-gauge metric field."""
        return cls(lambda x: field(x)[..., 1, 1] - 1.0, lambda x: field(x)[..., 1, 2], convention)

    def components(self, x):
        """(h_plus, h_cross) stacked on the last axis."""
        x = torch.as_tensor(x, dtype=torch.float64)
        return torch.stack([self.h_plus(x), self.h_cross(x)], dim=-1)

    def __call__(self, x):
        hp, hc = self.components(x).unbind(-1)
        peak = float(torch.maximum(hp.abs().max(), hc.abs().max()))
        if peak > self.bound:
            raise DomainError("strain amplitude {} exceeds the bound {}".format(peak, self.bound))
        sign = -1.0 if self.convention == "minus" else 1.0
        return torch.complex(hp, sign * hc)

    def __repr__(self):
        return "ComplexStrain(convention={})".format(self.convention)

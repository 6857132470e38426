#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import torch

from .components import assemble, minkowski_cartesian

__all__ = ["tt_metric", "tt_distortion", "tt_phase"]


def tt_phase(x, params):
    """omega * (t - z) for a wave travelling along +z."""
    return params.omega * (x[..., 0] - x[..., 3])


def tt_distortion(x, params):
    """
    Linearised plane wave in transverse-traceless gauge.

    With `standard_tt` the yy entry carries -h_plus (traceless strain), otherwise
    +h_plus on both diagonal entries.
    """
    c = torch.cos(tt_phase(x, params))
    sign_yy = -1.0 if params.standard_tt else 1.0
    return assemble({
        (1, 1): params.h_plus * c,
        (2, 2): sign_yy * params.h_plus * c,
        (1, 2): params.h_cross * c,
    }, c)


def tt_metric(x, params):
    return minkowski_cartesian(x) + tt_distortion(x, params)

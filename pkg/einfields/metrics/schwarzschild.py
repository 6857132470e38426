#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import torch

from .components import assemble, kerr_schild_form, minkowski_cartesian

__all__ = [
    "spherical_metric",
    "spherical_background",
    "spherical_distortion",
    "kerr_schild_metric",
    "kerr_schild_distortion",
    "eddington_finkelstein_metric",
    "eddington_finkelstein_background",
    "eddington_finkelstein_distortion",
]


def spherical_metric(x, params):
    M = params.M
    r, theta = x[..., 1], x[..., 2]
    f = 1.0 - 2.0 * M / r
    sin2 = torch.sin(theta) ** 2
    return assemble({(0, 0): -f, (1, 1): 1.0 / f, (2, 2): r * r, (3, 3): r * r * sin2}, r)


def spherical_background(x, params=None):
    r, theta = x[..., 1], x[..., 2]
    sin2 = torch.sin(theta) ** 2
    return assemble({(0, 0): -1.0, (1, 1): 1.0, (2, 2): r * r, (3, 3): r * r * sin2}, r)


def spherical_distortion(x, params):
    M = params.M
    r = x[..., 1]
    return assemble({(0, 0): 2.0 * M / r, (1, 1): 2.0 * M / (r - 2.0 * M)}, r)


def _ks_null_covector(x):
    cx, cy, cz = x[..., 1], x[..., 2], x[..., 3]
    r = torch.sqrt(cx * cx + cy * cy + cz * cz)
    ell = torch.stack([torch.ones_like(r), cx / r, cy / r, cz / r], dim=-1)
    return r, ell


def kerr_schild_distortion(x, params):
    r, ell = _ks_null_covector(x)
    return kerr_schild_form(2.0 * params.M / r, ell)


def kerr_schild_metric(x, params):
    return minkowski_cartesian(x) + kerr_schild_distortion(x, params)


def eddington_finkelstein_metric(x, params):
    M = params.M
    r, theta = x[..., 1], x[..., 2]
    sin2 = torch.sin(theta) ** 2
    return assemble({
        (0, 0): -(1.0 - 2.0 * M / r),
        (0, 1): 1.0,
        (2, 2): r * r,
        (3, 3): r * r * sin2,
    }, r)


def eddington_finkelstein_background(x, params=None):
    r, theta = x[..., 1], x[..., 2]
    sin2 = torch.sin(theta) ** 2
    return assemble({(0, 0): -1.0, (0, 1): 1.0, (2, 2): r * r, (3, 3): r * r * sin2}, r)


def eddington_finkelstein_distortion(x, params):
    r = x[..., 1]
    return assemble({(0, 0): 2.0 * params.M / r}, r)

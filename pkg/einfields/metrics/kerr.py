#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import torch

from .components import assemble, kerr_schild_form, minkowski_cartesian

__all__ = [
    "boyer_lindquist_metric",
    "boyer_lindquist_background",
    "boyer_lindquist_distortion",
    "eddington_finkelstein_metric",
    "eddington_finkelstein_background",
    "eddington_finkelstein_distortion",
    "kerr_schild_metric",
    "kerr_schild_distortion",
    "ks_radius_tensor",
    "kretschmann_closed_form",
]


def _sigma_delta(x, params):
    M, a = params.M, params.a
    r, theta = x[..., 1], x[..., 2]
    cos2 = torch.cos(theta) ** 2
    sin2 = torch.sin(theta) ** 2
    sigma = r * r + a * a * cos2
    delta = r * r - 2.0 * M * r + a * a
    return r, sin2, sigma, delta


def boyer_lindquist_metric(x, params):
    M, a = params.M, params.a
    r, sin2, sigma, delta = _sigma_delta(x, params)
    return assemble({
        (0, 0): -1.0 + 2.0 * M * r / sigma,
        (0, 3): -2.0 * M * a * r * sin2 / sigma,
        (1, 1): sigma / delta,
        (2, 2): sigma,
        (3, 3): (r * r + a * a) * sin2 + 2.0 * M * a * a * r * sin2 * sin2 / sigma,
    }, r)


def boyer_lindquist_background(x, params):
    a = params.a
    r, sin2, sigma, _ = _sigma_delta(x, params)
    return assemble({
        (0, 0): -1.0,
        (1, 1): sigma / (r * r + a * a),
        (2, 2): sigma,
        (3, 3): (r * r + a * a) * sin2,
    }, r)


def boyer_lindquist_distortion(x, params):
    M, a = params.M, params.a
    r, sin2, sigma, delta = _sigma_delta(x, params)
    return assemble({
        (0, 0): 2.0 * M * r / sigma,
        (0, 3): -2.0 * M * a * r * sin2 / sigma,
        (1, 1): 2.0 * M * r * sigma / (delta * (r * r + a * a)),
        (3, 3): 2.0 * M * a * a * r * sin2 * sin2 / sigma,
    }, r)


def eddington_finkelstein_metric(x, params):
    """Ingoing Kerr coordinates (v, r, theta, phi~)."""
    M, a = params.M, params.a
    r, sin2, sigma, _ = _sigma_delta(x, params)
    return assemble({
        (0, 0): -1.0 + 2.0 * M * r / sigma,
        (0, 1): 1.0,
        (0, 3): -2.0 * M * a * r * sin2 / sigma,
        (1, 3): -a * sin2,
        (2, 2): sigma,
        (3, 3): (r * r + a * a) * sin2 + 2.0 * M * a * a * r * sin2 * sin2 / sigma,
    }, r)


def eddington_finkelstein_background(x, params):
    a = params.a
    r, sin2, sigma, _ = _sigma_delta(x, params)
    return assemble({
        (0, 0): -1.0,
        (0, 1): 1.0,
        (1, 3): -a * sin2,
        (2, 2): sigma,
        (3, 3): (r * r + a * a) * sin2,
    }, r)


def eddington_finkelstein_distortion(x, params):
    M, a = params.M, params.a
    r, sin2, sigma, _ = _sigma_delta(x, params)
    return assemble({
        (0, 0): 2.0 * M * r / sigma,
        (0, 3): -2.0 * M * a * r * sin2 / sigma,
        (3, 3): 2.0 * M * a * a * r * sin2 * sin2 / sigma,
    }, r)


def ks_radius_tensor(cx, cy, cz, a, polish=True):
    """
    Kerr-Schild radius r(x, y, z) from the explicit root of the quadratic in r^2,
    followed by one Newton step on (x^2+y^2)/(r^2+a^2) + z^2/r^2 = 1.
    """
    rho2_a2 = cx * cx + cy * cy + cz * cz - a * a
    r2 = 0.5 * rho2_a2 + torch.sqrt(0.25 * rho2_a2 * rho2_a2 + a * a * cz * cz)
    r = torch.sqrt(r2)
    if polish:
        cyl2 = cx * cx + cy * cy
        w = r * r + a * a
        f = cyl2 / w + cz * cz / (r * r) - 1.0
        df = -2.0 * r * cyl2 / (w * w) - 2.0 * cz * cz / (r * r * r)
        r = r - f / df
    return r


def kerr_schild_distortion(x, params):
    M, a = params.M, params.a
    cx, cy, cz = x[..., 1], x[..., 2], x[..., 3]
    r = ks_radius_tensor(cx, cy, cz, a)
    w = r * r + a * a
    ell = torch.stack([
        torch.ones_like(r),
        (r * cx + a * cy) / w,
        (r * cy - a * cx) / w,
        cz / r,
    ], dim=-1)
    scale = 2.0 * M * r ** 3 / (r ** 4 + a * a * cz * cz)
    return kerr_schild_form(scale, ell)


def kerr_schild_metric(x, params):
    return minkowski_cartesian(x) + kerr_schild_distortion(x, params)


def kretschmann_closed_form(r, theta, M, a):
    """Kretschmann scalar of Kerr in terms of Boyer-Lindquist r and theta."""
    c2 = (a * torch.cos(torch.as_tensor(theta, dtype=torch.float64))) ** 2
    r = torch.as_tensor(r, dtype=torch.float64)
    r2 = r * r
    sigma = r2 + c2
    return 48.0 * M ** 2 * (r2 - c2) * (sigma ** 2 - 16.0 * r2 * c2) / sigma ** 6

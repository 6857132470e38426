#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import numpy as np

from einfields.metrics import MetricParams

__all__ = ["ring_points", "ring_trajectories", "ring_area"]


def ring_points(n=16, radius=1.0):
    """n test particles evenly spaced on a circle in the xy plane, (n, 2)."""
    angle = 2.0 * np.pi * np.arange(n) / n
    return radius * np.stack([np.cos(angle), np.sin(angle)], axis=1)


def ring_trajectories(ring, t, z, params: MetricParams):
    """
    First-order proper positions of free particles hit by the TT plane wave.

    x = (1 + h_plus c / 2) x0 + h_cross c y0 / 2 and
    y = h_cross c x0 / 2 + (1 -+ h_plus c / 2) y0 with c = cos(omega (t - z)); the
    yy sign follows the metric's `standard_tt` convention.

    Args:
        ring (array (N, 2)): initial (x0, y0).
        t (float or array (T,)): coordinate times.
        z (float): position along the propagation axis.

    Return:
        array (N, 2), or (T, N, 2) for an array of times.
    """
    ring = np.asarray(ring, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    c = np.cos(params.omega * (t - z))[..., None]
    sign_yy = -1.0 if params.standard_tt else 1.0
    x0, y0 = ring[:, 0], ring[:, 1]
    x = (1.0 + 0.5 * params.h_plus * c) * x0 + 0.5 * params.h_cross * c * y0
    y = 0.5 * params.h_cross * c * x0 + (1.0 + sign_yy * 0.5 * params.h_plus * c) * y0
    return np.stack([x, y], axis=-1)


def ring_area(points):
    """Shoelace area of the polygon through `points` (..., N, 2)."""
    x, y = points[..., 0], points[..., 1]
    return 0.5 * np.abs(np.sum(x * np.roll(y, -1, axis=-1) - np.roll(x, -1, axis=-1) * y, axis=-1))

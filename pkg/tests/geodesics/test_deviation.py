#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import math
import unittest

import numpy as np

import torch

from einfields.geodesics import (
    ChristoffelProvider,
    GeodesicState,
    cartesian_positions,
    circular_b0,
    geodesic_deviation,
    integrate,
    orthonormal_components,
    rollout_deviation,
    schwarzschild_ic
)
from einfields.metrics import AnalyticMetric, ChartId, MetricParams
from einfields.utils import DomainError

FLAT = MetricParams(M=0.0)


def straight_line(y0=0.0, tau_end=5.0):
    provider = ChristoffelProvider.analytic(ChartId.MINKOWSKI_CARTESIAN, FLAT)
    ic = GeodesicState((0.0, 0.0, y0, 0.0), (1.25, 0.75, 0.0, 0.0))
    return integrate(provider, ic, tau_end)


def circular_orbit(tau_end=60.0):
    provider = ChristoffelProvider.analytic(ChartId.SCHWARZSCHILD_SPHERICAL, MetricParams(M=1.0))
    return integrate(provider, schwarzschild_ic(3.85, circular_b0()), tau_end)


class TestRolloutDeviation(unittest.TestCase):

    def test_identical(self):
        traj = circular_orbit()
        series = rollout_deviation(traj, traj, samples=500)
        self.assertEqual(len(series.tau), 500)
        self.assertEqual(series.max(), 0.0)

    def test_offset(self):
        series = rollout_deviation(straight_line(0.0), straight_line(1.0), samples=50)
        self.assertTrue(np.allclose(series.delta_r, 1.0, atol=1e-12))

    def test_shared_range(self):
        series = rollout_deviation(straight_line(tau_end=5.0), straight_line(tau_end=3.0))
        self.assertAlmostEqual(series.tau[-1], 3.0)
        with self.assertRaises(DomainError):
            rollout_deviation(straight_line(tau_end=5.0), straight_line(tau_end=-5.0))

    def test_cartesian_positions(self):
        traj = circular_orbit()
        radius = np.linalg.norm(cartesian_positions(traj), axis=1)
        self.assertTrue(np.allclose(radius, 7.7, atol=1e-6))


class TestGeodesicDeviation(unittest.TestCase):

    def test_flat_separation_grows_linearly(self):
        traj = straight_line()
        field = AnalyticMetric(ChartId.MINKOWSKI_CARTESIAN, FLAT)
        result = geodesic_deviation(traj, [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.1, 0.0], field)
        self.assertTrue(np.allclose(result.separation[:, 2], 1.0 + 0.1 * result.tau, atol=1e-10))
        self.assertTrue(np.allclose(result.rate[:, 2], 0.1, atol=1e-10))
        proper = result.proper_separation(field)
        self.assertTrue(np.allclose(proper[:, 1], result.separation[:, 2]))

    def test_zero_separation_stays_zero(self):
        traj = circular_orbit(20.0)
        field = AnalyticMetric(ChartId.SCHWARZSCHILD_SPHERICAL, MetricParams(M=1.0))
        result = geodesic_deviation(traj, np.zeros(4), np.zeros(4), field)
        self.assertEqual(float(np.abs(result.separation).max()), 0.0)
        self.assertEqual(len(result.tau), len(traj))

    def test_tidal_stretching(self):
        # radial separation of a particle at rest grows under the tidal field
        provider = ChristoffelProvider.analytic(ChartId.SCHWARZSCHILD_SPHERICAL,
                                                MetricParams(M=1.0))
        traj = integrate(provider, schwarzschild_ic(10.0, 0.0), 5.0)
        field = AnalyticMetric(ChartId.SCHWARZSCHILD_SPHERICAL, MetricParams(M=1.0))
        result = geodesic_deviation(traj, [0.0, 1e-3, 0.0, 0.0], np.zeros(4), field)
        proper = result.proper_separation(field)
        self.assertGreater(proper[-1, 0], proper[0, 0])

    def test_orthonormal_components(self):
        g = torch.diag(torch.tensor([-1.0, 4.0, 9.0, 1.0], dtype=torch.float64))
        S = torch.tensor([0.0, 1.0, 1.0, 1.0], dtype=torch.float64)
        self.assertTrue(torch.allclose(orthonormal_components(g, S),
                                       torch.tensor([2.0, 3.0, 1.0], dtype=torch.float64)))
        g[1, 1] = -1.0
        with self.assertRaises(DomainError):
            orthonormal_components(g, S)


if __name__ == "__main__":
    unittest.main()

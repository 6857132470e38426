#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import math
import unittest

import numpy as np

from einfields.geodesics import ChristoffelProvider, GeodesicState, geodesic_deviation, integrate
from einfields.gw import (
    ComplexStrain,
    radiated_power,
    radiated_power_numeric,
    ring_area,
    ring_points,
    ring_trajectories
)
from einfields.metrics import AnalyticMetric, ChartId, MetricParams

WAVE = MetricParams(M=0.0, h_plus=1e-6, h_cross=5e-7, omega=1.0, standard_tt=True)


class TestRing(unittest.TestCase):

    def test_stretch(self):
        params = MetricParams(M=0.0, h_plus=1e-6, omega=1.0)
        pts = ring_trajectories(np.array([[1.0, 0.0]]), 0.0, 0.0, params)
        self.assertAlmostEqual(pts[0, 0], 1.0000005, places=13)
        self.assertEqual(pts[0, 1], 0.0)

    def test_shapes(self):
        ring = ring_points(16, 2.0)
        self.assertEqual(ring.shape, (16, 2))
        self.assertTrue(np.allclose(np.linalg.norm(ring, axis=1), 2.0))
        self.assertEqual(ring_trajectories(ring, np.linspace(0, 1, 5), 0.0, WAVE).shape,
                         (5, 16, 2))

    def test_traceless_wave_keeps_area(self):
        ring = ring_points(64)
        area0 = ring_area(ring)
        self.assertAlmostEqual(area0, 32.0 * math.sin(2.0 * math.pi / 64), places=12)
        areas = ring_area(ring_trajectories(ring, np.linspace(0.0, 6.0, 13), 0.0, WAVE))
        self.assertTrue(np.allclose(areas / area0, 1.0, atol=1e-11))

    def test_matches_geodesic_deviation(self):
        provider = ChristoffelProvider.analytic(ChartId.GW_CARTESIAN_TT, WAVE)
        traj = integrate(provider, GeodesicState((0.0, 0.0, 0.0, 0.0), (1.0, 0.0, 0.0, 0.0)), 6.0)
        field = AnalyticMetric(ChartId.GW_CARTESIAN_TT, WAVE)
        for x0, y0 in ((1.0, 0.0), (0.0, 1.0), (0.6, 0.8)):
            result = geodesic_deviation(traj, [0.0, x0, y0, 0.0], np.zeros(4), field)
            proper = result.proper_separation(field)[:, :2]
            ring = ring_trajectories(np.array([[x0, y0]]), result.tau, 0.0, WAVE)[:, 0]
            self.assertTrue(np.allclose(proper, ring, atol=1e-10))


class TestPower(unittest.TestCase):

    def test_closed_form(self):
        self.assertAlmostEqual(radiated_power(1e-6, 1e-6, 1.0), 2.5e-13, delta=1e-25)
        self.assertEqual(radiated_power(0.0, 0.0, 3.0), 0.0)

    def test_numeric(self):
        params = MetricParams(M=0.0, h_plus=1e-6, h_cross=1e-6, omega=2.0)
        numeric = radiated_power_numeric(ComplexStrain.plane_wave(params), params.omega, z=1.5)
        self.assertAlmostEqual(numeric / radiated_power(1e-6, 1e-6, 2.0), 1.0, places=10)
        self.assertEqual(radiated_power_numeric(ComplexStrain.plane_wave(params), 0.0), 0.0)


if __name__ == "__main__":
    unittest.main()

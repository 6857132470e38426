#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import math
import unittest

import torch

from einfields.metrics import (
    AnalyticMetric,
    ChartId,
    MetricParams,
    background_eval,
    distortion_eval,
    metric_eval
)
from einfields.utils import DomainError


def point(*coords):
    return torch.tensor(coords, dtype=torch.float64)


def diag(*values):
    return torch.diag(torch.tensor(values, dtype=torch.float64))


def random_domain_points(chart, params, n, seed=0):
    """Points with r in [3, 23] and theta away from the axis, mapped into `chart`."""
    gen = torch.Generator().manual_seed(seed)

    def uniform(low, high):
        return low + (high - low) * torch.rand(n, generator=gen, dtype=torch.float64)

    t = uniform(-5.0, 5.0)
    r = uniform(3.0, 23.0)
    theta = uniform(0.1, math.pi - 0.1)
    phi = uniform(0.0, 2 * math.pi)
    if chart.is_spherical:
        return torch.stack([t, r, theta, phi], dim=-1)
    if chart in (ChartId.GW_CARTESIAN_TT, ChartId.MINKOWSKI_CARTESIAN):
        return torch.stack([t, uniform(-10, 10), uniform(-10, 10), uniform(-10, 10)], dim=-1)
    a = params.a if chart is ChartId.KERR_KS else 0.0
    rho = torch.sqrt(r * r + a * a) * torch.sin(theta)
    z = r * torch.cos(theta)
    return torch.stack([t, rho * torch.cos(phi), rho * torch.sin(phi), z], dim=-1)


class TestMetricEval(unittest.TestCase):

    def test_schwarzschild_spherical(self):
        g = metric_eval(ChartId.SCHWARZSCHILD_SPHERICAL, MetricParams(M=1.0),
                        point(0.0, 4.0, math.pi / 2, 0.0))
        self.assertTrue(torch.allclose(g.matrix, diag(-0.5, 2.0, 16.0, 16.0), atol=1e-14))

    def test_kerr_without_spin_is_schwarzschild(self):
        params = MetricParams(M=1.0, a=0.0)
        x = point(0.3, 5.5, 1.1, 2.0)
        g_bl = metric_eval(ChartId.KERR_BL, params, x).matrix
        g_s = metric_eval(ChartId.SCHWARZSCHILD_SPHERICAL, params, x).matrix
        self.assertTrue(torch.allclose(g_bl, g_s, atol=1e-14))

    def test_flat_wave(self):
        g = metric_eval(ChartId.GW_CARTESIAN_TT, MetricParams(M=0.0), point(1.0, 2.0, 3.0, 4.0))
        self.assertTrue(torch.allclose(g.matrix, diag(-1.0, 1.0, 1.0, 1.0), atol=0.0))

    def test_outside_domain(self):
        with self.assertRaises(DomainError):
            metric_eval(ChartId.SCHWARZSCHILD_SPHERICAL, MetricParams(M=1.0),
                        point(0.0, 2.2, 1.0, 0.0))

    def test_batch(self):
        x = torch.tensor([[0.0, 4.0, 1.0, 0.0], [0.0, 8.0, 2.0, 1.0]], dtype=torch.float64)
        g = metric_eval(ChartId.SCHWARZSCHILD_SPHERICAL, MetricParams(), x)
        self.assertEqual(tuple(g.packed.shape), (2, 10))


class TestBackgroundDistortion(unittest.TestCase):

    def test_flat_spherical(self):
        b = background_eval(ChartId.SCHWARZSCHILD_SPHERICAL, MetricParams(M=0.0),
                            point(0.0, 2.0, math.pi / 2, 0.0))
        self.assertTrue(torch.allclose(b.matrix, diag(-1.0, 1.0, 4.0, 4.0), atol=1e-14))

    def test_flat_boyer_lindquist(self):
        b = background_eval(ChartId.KERR_BL, MetricParams(M=1.0, a=0.7),
                            point(0.0, 3.0, math.pi / 2, 0.0))
        expected = diag(-1.0, 9.0 / 9.49, 9.0, 9.49)
        self.assertTrue(torch.allclose(b.matrix, expected, atol=1e-13))

    def test_minkowski(self):
        b = background_eval(ChartId.MINKOWSKI_CARTESIAN, MetricParams(), point(7.0, -1.0, 2.0, 0.5))
        self.assertTrue(torch.equal(b.matrix, diag(-1.0, 1.0, 1.0, 1.0)))

    def test_schwarzschild_distortion(self):
        d = distortion_eval(ChartId.SCHWARZSCHILD_SPHERICAL, MetricParams(M=1.0),
                            point(0.0, 4.0, math.pi / 2, 0.0))
        self.assertTrue(torch.allclose(d.matrix, diag(0.5, 1.0, 0.0, 0.0), atol=1e-14))

    def test_massless_distortion_vanishes(self):
        params = MetricParams(M=0.0, horizon_margin=0.0)
        for chart in ChartId:
            if chart.is_spherical:
                x = point(0.0, 3.0, 1.0, 0.5)
            else:
                x = point(0.0, 1.0, 2.0, 3.0)
            d = distortion_eval(chart, params, x)
            self.assertEqual(float(d.packed.abs().max()), 0.0, chart.value)

    def test_kerr_ef_sparsity(self):
        d = distortion_eval(ChartId.KERR_EF, MetricParams(M=1.0, a=0.7),
                            point(0.0, 3.0, 1.0, 0.5))
        # tt, t-phi and phi-phi
        self.assertEqual(int((d.packed != 0).sum()), 3)

    def test_background_plus_distortion(self):
        params = MetricParams(M=1.0, a=0.6)
        x = point(0.0, 1.5, 0.7, 2.0)
        for chart in (ChartId.KERR_KS, ChartId.SCHWARZSCHILD_KS):
            field = AnalyticMetric(chart, params)
            total = field.background()(x) + field.distortion()(x)
            self.assertTrue(torch.allclose(total, field(x), atol=1e-14))

    def test_metric_is_background_plus_distortion_everywhere(self):
        params = MetricParams(M=1.0, a=0.7, h_plus=1e-3, h_cross=1e-3, omega=0.5)
        for chart in ChartId:
            x = random_domain_points(chart, params, 10000, seed=7)
            g = metric_eval(chart, params, x).packed
            total = (background_eval(chart, params, x).packed
                     + distortion_eval(chart, params, x).packed)
            self.assertLessEqual(float((g - total).abs().max()), 1e-13, chart.value)


class TestParams(unittest.TestCase):

    def test_overextremal(self):
        with self.assertRaises(DomainError):
            MetricParams(M=1.0, a=1.2)

    def test_strain_bound(self):
        with self.assertRaises(DomainError):
            MetricParams(h_plus=0.5)

    def test_chart_parse(self):
        self.assertIs(ChartId.parse("KerrBL"), ChartId.KERR_BL)
        self.assertIs(ChartId.parse("kerr_bl"), ChartId.KERR_BL)
        with self.assertRaises(ValueError):
            ChartId.parse("Rindler")


if __name__ == "__main__":
    unittest.main()

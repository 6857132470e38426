#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import math
import unittest

import torch

from einfields.diffgeo import (
    SampledCurve,
    covariant_derivative,
    lie_derivative,
    parallel_transport,
    transport_history
)
from einfields.metrics import AnalyticMetric, ChartId, MetricParams
from einfields.tensor import Tensor4

E_T = torch.tensor([1.0, 0.0, 0.0, 0.0], dtype=torch.float64)
E_PHI = torch.tensor([0.0, 0.0, 0.0, 1.0], dtype=torch.float64)


def point(*coords):
    return torch.tensor(coords, dtype=torch.float64)


def equatorial_circle(r):
    def fn(lam):
        zero = 0.0 * lam
        return torch.stack([zero, zero + r, zero + math.pi / 2, lam])
    return fn


class TestCovariantDerivative(unittest.TestCase):

    def test_metric_compatibility(self):
        for chart, params, x in (
            (ChartId.SCHWARZSCHILD_SPHERICAL, MetricParams(M=1.0), point(0.0, 4.0, 1.0, 0.5)),
            (ChartId.KERR_KS, MetricParams(M=1.0, a=0.5), point(0.3, 1.5, 2.0, -1.0)),
        ):
            field = AnalyticMetric(chart, params)
            nabla_g = covariant_derivative(field, 0, 2, field, x)
            self.assertEqual((nabla_g.rank_up, nabla_g.rank_down), (0, 3))
            self.assertLess(float(nabla_g.data.abs().max()), 1e-12, chart.value)

    def test_flat_radial_vector(self):
        # the radial unit field in flat spherical coordinates has nabla_theta e_r = e_theta / r
        field = AnalyticMetric(ChartId.SCHWARZSCHILD_SPHERICAL, MetricParams(M=0.0))

        def radial(x):
            zero = 0.0 * x[1]
            return torch.stack([zero, 1.0 + zero, zero, zero])

        nabla = covariant_derivative(radial, 1, 0, field, point(0.0, 2.0, 1.0, 0.0))
        self.assertAlmostEqual(float(nabla.data[2, 2]), 0.5, places=14)
        self.assertAlmostEqual(float(nabla.data[3, 3]), 0.5, places=14)
        self.assertAlmostEqual(float(nabla.data[1, 1]), 0.0, places=14)

    def test_batch(self):
        field = AnalyticMetric(ChartId.SCHWARZSCHILD_SPHERICAL, MetricParams(M=1.0))
        x = torch.tensor([[0.0, 4.0, 1.0, 0.5], [0.0, 7.0, 2.0, 0.1]], dtype=torch.float64)
        out = covariant_derivative(field, 0, 2, field, x)
        self.assertEqual(tuple(out.shape), (2, 4, 4, 4))


class TestLieDerivative(unittest.TestCase):

    def test_killing_vectors(self):
        params = MetricParams(M=1.0, a=0.7)
        field = AnalyticMetric(ChartId.KERR_BL, params)
        x = point(0.0, 4.0, 1.1, 0.3)
        for e in (E_T, E_PHI):
            killing = lambda y, e=e: e + 0.0 * y  # noqa: E731
            lie = lie_derivative(field, 0, 2, killing, x)
            self.assertLess(float(lie.data.abs().max()), 1e-13)
            lie_cov = lie_derivative(field, 0, 2, killing, x, metric_field=field)
            self.assertLess(float(lie_cov.data.abs().max()), 1e-12)

    def test_partial_and_covariant_forms_agree(self):
        field = AnalyticMetric(ChartId.SCHWARZSCHILD_SPHERICAL, MetricParams(M=1.0))
        vector = lambda y: torch.stack(  # noqa: E731
            [y[1], y[0] * y[2], torch.sin(y[3]), y[1] ** 2])
        other = lambda y: torch.stack([y[2], y[1] * y[3], y[0], 1.0 + y[1]])  # noqa: E731
        scalar = lambda y: y[1] * torch.cos(y[2])  # noqa: E731
        x = point(0.5, 5.0, 1.0, 0.4)
        for f, rank in ((other, (1, 0)), (scalar, (0, 0))):
            plain = lie_derivative(f, rank[0], rank[1], vector, x)
            cov = lie_derivative(f, rank[0], rank[1], vector, x, metric_field=field)
            self.assertTrue(plain.allclose(cov, atol=1e-11))


class TestParallelTransport(unittest.TestCase):

    def test_flat_loop_has_no_holonomy(self):
        field = AnalyticMetric(ChartId.SCHWARZSCHILD_SPHERICAL, MetricParams(M=0.0))
        v0 = Tensor4.vector([0.0, 1.0, 0.0, 0.0])
        v1 = parallel_transport(v0, equatorial_circle(2.0), field, span=(0.0, 2 * math.pi))
        self.assertTrue(v1.allclose(v0, atol=1e-8))

    def test_norm_preserved(self):
        field = AnalyticMetric(ChartId.SCHWARZSCHILD_SPHERICAL, MetricParams(M=1.0))
        v0 = Tensor4.vector([1.0, 0.2, 0.0, 0.05])
        result = transport_history(v0, equatorial_circle(6.0), field, span=(0.0, math.pi))
        g = field(point(0.0, 6.0, math.pi / 2, 0.0))
        norm0 = float(v0.data @ g @ v0.data)
        norm1 = float(result.tensor.data @ g @ result.tensor.data)
        self.assertAlmostEqual(norm1, norm0, places=9)
        self.assertGreater(result.nfev, 0)

    def test_sampled_curve(self):
        field = AnalyticMetric(ChartId.MINKOWSKI_CARTESIAN, MetricParams())
        lam = torch.linspace(0.0, 1.0, 20, dtype=torch.float64)
        pts = torch.stack([lam, torch.sin(lam), lam ** 2, 0.0 * lam], dim=-1)
        v0 = Tensor4.vector([1.0, 0.3, -0.2, 0.1])
        v1 = parallel_transport(v0, SampledCurve(lam.numpy(), pts.numpy()), field)
        self.assertTrue(v1.allclose(v0, atol=1e-12))


if __name__ == "__main__":
    unittest.main()

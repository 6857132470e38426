#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import math
import unittest

import torch

from einfields.diffgeo import (
    bianchi_first_residual,
    bianchi_second_residual,
    christoffel_at,
    curvature_bundle,
    riemann,
    riemann_symmetry_residuals
)
from einfields.metrics import AnalyticMetric, ChartId, MetricParams
from einfields.metrics.kerr import kretschmann_closed_form
from einfields.utils import DomainError


def point(*coords):
    return torch.tensor(coords, dtype=torch.float64)


SCHWARZSCHILD = AnalyticMetric(ChartId.SCHWARZSCHILD_SPHERICAL, MetricParams(M=1.0))


class TestChristoffel(unittest.TestCase):

    def test_minkowski(self):
        field = AnalyticMetric(ChartId.MINKOWSKI_CARTESIAN, MetricParams())
        gamma = christoffel_at(field, torch.randn(6, 4, dtype=torch.float64)).gamma
        self.assertEqual(float(gamma.abs().max()), 0.0)

    def test_flat_spherical(self):
        field = AnalyticMetric(ChartId.SCHWARZSCHILD_SPHERICAL, MetricParams(M=0.0))
        gamma = christoffel_at(field, point(0.0, 2.0, math.pi / 2, 0.0)).gamma
        self.assertAlmostEqual(float(gamma[1, 2, 2]), -2.0, places=14)
        self.assertAlmostEqual(float(gamma[2, 1, 2]), 0.5, places=14)
        self.assertAlmostEqual(float(gamma[2, 2, 1]), 0.5, places=14)
        self.assertAlmostEqual(float(gamma[3, 1, 3]), 0.5, places=14)

    def test_schwarzschild(self):
        chris = christoffel_at(SCHWARZSCHILD, point(0.0, 4.0, math.pi / 2, 0.0))
        self.assertAlmostEqual(float(chris.gamma[1, 0, 0]), 0.03125, places=14)
        self.assertAlmostEqual(float(chris.gamma[0, 0, 1]), 1.0 / 8.0, places=14)
        self.assertEqual(chris.symmetry_residual(), 0.0)

    def test_domain(self):
        with self.assertRaises(DomainError):
            christoffel_at(SCHWARZSCHILD, point(0.0, 1.0, 1.0, 0.0))


class TestRiemann(unittest.TestCase):

    def test_flat(self):
        field = AnalyticMetric(ChartId.SCHWARZSCHILD_SPHERICAL, MetricParams(M=0.0))
        rm = riemann(field, point(0.0, 3.0, 1.0, 0.2))
        self.assertLess(float(rm.up.abs().max()), 1e-14)

    def test_schwarzschild_component(self):
        rm = riemann(SCHWARZSCHILD, point(0.0, 4.0, math.pi / 2, 0.0))
        self.assertAlmostEqual(float(rm.up[0, 1, 0, 1]), 0.0625, places=13)
        self.assertAlmostEqual(float(rm.up[0, 1, 1, 0]), -0.0625, places=13)

    def test_symmetries(self):
        field = AnalyticMetric(ChartId.KERR_KS, MetricParams(M=1.0, a=0.8))
        x = point(0.0, 2.5, -1.0, 1.7)
        down = riemann(field, x).down
        for name, res in riemann_symmetry_residuals(down).items():
            self.assertLess(res, 1e-10, name)
        self.assertLess(bianchi_first_residual(down), 1e-10)

    def test_second_bianchi(self):
        x = point(0.0, 5.0, 1.0, 0.3)
        self.assertLess(bianchi_second_residual(SCHWARZSCHILD, x), 1e-9)


class TestCurvatureBundle(unittest.TestCase):

    def test_kerr_schild_kretschmann(self):
        field = AnalyticMetric(ChartId.SCHWARZSCHILD_KS, MetricParams(M=1.0))
        bundle = curvature_bundle(field, point(0.0, 2.0, 0.0, 0.0))
        self.assertAlmostEqual(float(bundle.kretschmann), 0.75, places=10)

    def test_vacuum(self):
        field = AnalyticMetric(ChartId.KERR_BL, MetricParams(M=1.0, a=0.7))
        bundle = curvature_bundle(field, point(0.0, 4.0, 1.0, 0.0))
        self.assertLess(float(bundle.ricci.abs().max()), 1e-10)
        self.assertLess(float(bundle.einstein.abs().max()), 1e-10)
        self.assertLess(abs(float(bundle.ricci_scalar)), 1e-10)
        # in vacuum the Weyl tensor is the Riemann tensor
        self.assertTrue(torch.allclose(bundle.weyl, bundle.riemann_down, atol=1e-10))

    def test_kerr_closed_form(self):
        params = MetricParams(M=1.0, a=0.7)
        field = AnalyticMetric(ChartId.KERR_BL, params)
        for r, theta in ((4.0, 1.0), (6.0, 0.4), (3.0, math.pi / 2)):
            got = float(curvature_bundle(field, point(0.0, r, theta, 0.0)).kretschmann)
            expected = float(kretschmann_closed_form(r, theta, params.M, params.a))
            self.assertAlmostEqual(got / expected, 1.0, places=9)


if __name__ == "__main__":
    unittest.main()

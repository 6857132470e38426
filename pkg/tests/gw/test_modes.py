#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import math
import os
import tempfile
import unittest

import numpy as np

import torch

from einfields.gw import SphereQuadrature, extract_mode, gram_matrix, mode_series, swsh
from einfields.utils import DomainError, read_csv


def spherical(pts):
    x, y, z = pts[..., 1], pts[..., 2], pts[..., 3]
    r = torch.sqrt(x * x + y * y + z * z)
    return r, torch.acos(z / r), torch.atan2(y, x)


def mode_strain(amplitude, l, m, s=-2):  # noqa: E741
    """A single (l, m) mode falling off like 1/r."""
    def strain(pts):
        r, theta, phi = spherical(pts)
        y = swsh(s, l, m, theta.numpy(), phi.numpy())
        return torch.as_tensor(amplitude * y / r.numpy())
    return strain


class TestHarmonics(unittest.TestCase):

    def test_north_pole(self):
        self.assertAlmostEqual(complex(swsh(-2, 2, 2, 0.0, 0.0)).real, 0.630783, places=6)
        self.assertAlmostEqual(complex(swsh(-2, 2, 2, 0.0, 0.0)).real,
                               0.5 * math.sqrt(5.0 / math.pi), places=14)

    def test_closed_form(self):
        theta = np.linspace(0.0, np.pi, 7)
        phi = np.linspace(0.0, 2.0 * np.pi, 7)
        expected = math.sqrt(5.0 / math.pi) / 8.0 * (1.0 + np.cos(theta)) ** 2 * np.exp(2j * phi)
        self.assertTrue(np.allclose(swsh(-2, 2, 2, theta, phi), expected, atol=1e-14))

    def test_spin_zero_is_ordinary_harmonic(self):
        theta = np.linspace(0.1, 3.0, 5)
        y10 = swsh(0, 1, 0, theta, 0.0)
        self.assertTrue(np.allclose(y10, math.sqrt(3.0 / (4.0 * math.pi)) * np.cos(theta)))

    def test_invalid(self):
        for s, l, m in ((-2, 1, 0), (-2, 2, 3), (0, 0, 1)):  # noqa: E741
            with self.assertRaises(DomainError):
                swsh(s, l, m, 0.5, 0.5)

    def test_orthonormal(self):
        modes = [(2, 2), (2, -1), (3, 1), (4, 0), (4, 4)]
        gram = gram_matrix(-2, modes)
        self.assertTrue(np.allclose(gram, np.eye(len(modes)), atol=1e-12))

    def test_quadrature(self):
        quad = SphereQuadrature(32, 64)
        _, _, weights = quad.nodes()
        self.assertAlmostEqual(weights.sum(), 4.0 * math.pi, places=12)
        self.assertTrue(quad.is_resolved())
        self.assertFalse(SphereQuadrature(16, 64).is_resolved())


class TestExtraction(unittest.TestCase):

    def test_recovers_coefficient(self):
        amplitude = 0.3 - 0.2j
        strain = mode_strain(amplitude, 2, 2)
        got = extract_mode(strain, 2, 2, r=10.0, t=0.0)
        self.assertAlmostEqual(abs(got - amplitude), 0.0, places=12)
        self.assertAlmostEqual(abs(extract_mode(strain, 2, 1, r=10.0, t=0.0)), 0.0, places=12)
        half = extract_mode(strain, 2, 2, r=10.0, t=0.0, mass=2.0)
        self.assertAlmostEqual(abs(half - amplitude / 2), 0.0, places=12)

    def test_angle_independent_strain(self):
        def constant(pts):
            return torch.full(pts.shape[:-1], 1e-6 + 0j, dtype=torch.complex128)

        for m in (-2, -1, 1, 2):
            self.assertAlmostEqual(abs(extract_mode(constant, 2, m, 10.0, 0.0)), 0.0, places=15)

    def test_zero_strain(self):
        zero = lambda pts: torch.zeros(pts.shape[:-1], dtype=torch.complex128)  # noqa: E731
        self.assertEqual(extract_mode(zero, 2, 2, 10.0, 0.0), 0.0)

    def test_rejections(self):
        strain = mode_strain(1.0, 2, 2)
        with self.assertRaises(DomainError):
            extract_mode(strain, 2, 2, 10.0, 0.0, quadrature=SphereQuadrature(16, 32))
        with self.assertRaises(DomainError):
            extract_mode(strain, 2, 2, 10.0, 0.0, mass=0.0)
        with self.assertRaises(DomainError):
            extract_mode(strain, 1, 0, 10.0, 0.0)

    def test_series(self):
        series = mode_series(mode_strain(0.5, 3, -1), 3, -1, 20.0, [0.0, 1.0, 2.0],
                             quadrature=SphereQuadrature(32, 64))
        self.assertTrue(np.allclose(series.values, 0.5, atol=1e-12))
        with tempfile.TemporaryDirectory() as tmp:
            meta, columns, rows = read_csv(series.to_csv(os.path.join(tmp, "modes.csv")))
        self.assertEqual((meta["l"], meta["m"]), (3, -1))
        self.assertEqual(columns, ["t", "re_h", "im_h"])
        self.assertEqual(rows.shape, (3, 3))


if __name__ == "__main__":
    unittest.main()

#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import math
import os
import tempfile
import unittest

import torch

from einfields.data import (
    AxisSpec,
    EpochBatchSampler,
    GridSpec,
    generate_dataset,
    load_dataset,
    save_dataset
)
from einfields.metrics import ChartId, MetricParams, distortion_eval
from einfields.utils import CheckpointError, ConfigError, DomainError


def spherical_grid(r_lo=3.0):
    return GridSpec((
        AxisSpec(0.0, 0.0, 1),
        AxisSpec(r_lo, 6.0, 3),
        AxisSpec(0.0, math.pi, 3, closed_lo=False, closed_hi=False),
        AxisSpec(0.0, 2 * math.pi, 2, closed_hi=False),
    ))


class TestGrid(unittest.TestCase):

    def test_sample_counts(self):
        cube = GridSpec(((0.0, 0.0, 1), (-1.0, 1.0, 128), (-1.0, 1.0, 128), (-1.0, 1.0, 128)))
        self.assertEqual(cube.size, 2097152)
        slab = GridSpec(((0.0, 0.0, 1), (3.0, 10.0, 140), (0.1, 3.0, 140), (0.0, 6.0, 100)))
        self.assertEqual(slab.size, 1960000)
        self.assertEqual(slab.shape, (1, 140, 140, 100))

    def test_open_axis(self):
        theta = AxisSpec(0.0, math.pi, 4, closed_lo=False, closed_hi=False)
        expected = torch.tensor([1.0, 2.0, 3.0, 4.0], dtype=torch.float64) * math.pi / 5
        self.assertTrue(torch.allclose(theta.nodes(), expected))
        phi = AxisSpec(0.0, 2 * math.pi, 4, closed_hi=False)
        self.assertAlmostEqual(float(phi.nodes()[-1]), 1.5 * math.pi)

    def test_points_row_major(self):
        grid = GridSpec(((0.0, 1.0, 2), (0.0, 1.0, 3), (5.0, 5.0, 1), (0.0, 1.0, 2)))
        pts = grid.points()
        self.assertEqual(tuple(pts.shape), (12, 4))
        self.assertEqual(pts[1].tolist(), [0.0, 0.0, 5.0, 1.0])
        self.assertEqual(pts[2].tolist(), [0.0, 0.5, 5.0, 0.0])

    def test_staggered_is_disjoint(self):
        grid = spherical_grid()
        stag = grid.staggered()
        self.assertEqual(stag.shape, (1, 2, 2, 1))
        self.assertAlmostEqual(float(stag.axes[1].nodes()[0]), 3.75)
        nodes = set(map(tuple, grid.points().tolist()))
        self.assertFalse(nodes & set(map(tuple, stag.points().tolist())))

    def test_bad_axis(self):
        with self.assertRaises(ConfigError):
            AxisSpec(1.0, 0.0, 3)
        with self.assertRaises(ConfigError):
            AxisSpec(0.0, 1.0, 0)

    def test_dict_roundtrip(self):
        grid = spherical_grid()
        self.assertEqual(GridSpec.from_dict(grid.as_dict()), grid)


class TestGenerate(unittest.TestCase):

    def setUp(self):
        self.params = MetricParams(M=1.0)
        self.ds = generate_dataset(ChartId.SCHWARZSCHILD_SPHERICAL, self.params, spherical_grid(),
                                   progress=False)

    def test_blocks(self):
        ds = self.ds
        self.assertEqual(len(ds), 18)
        self.assertEqual(ds.order, 2)
        self.assertEqual(tuple(ds.jac.shape), (18, 4, 10))
        self.assertEqual(tuple(ds.hess.shape), (18, 10, 10))
        expected = distortion_eval(ChartId.SCHWARZSCHILD_SPHERICAL, self.params, ds.coords).packed
        self.assertTrue(torch.allclose(ds.value, expected, atol=1e-14))

    def test_radial_derivatives(self):
        ds = self.ds
        r = ds.coords[:, 1]
        # d_r (2M / r) and d_r d_r (2M / r) on the tt component
        self.assertTrue(torch.allclose(ds.jac[:, 1, 0], -2.0 / r ** 2, atol=1e-13))
        self.assertTrue(torch.allclose(ds.hess[:, 4, 0], 4.0 / r ** 3, atol=1e-13))

    def test_lower_order(self):
        ds = generate_dataset(ChartId.SCHWARZSCHILD_SPHERICAL, self.params, spherical_grid(),
                              order=0, target="metric", progress=False)
        self.assertEqual(ds.order, 0)
        self.assertIsNone(ds.jac)
        self.assertAlmostEqual(float(ds.value[0, 0]), -(1.0 - 2.0 / 3.0), places=14)

    def test_outside_domain(self):
        with self.assertRaises(DomainError):
            generate_dataset(ChartId.SCHWARZSCHILD_SPHERICAL, self.params, spherical_grid(1.0),
                             progress=False)

    def test_save_load(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = save_dataset(self.ds, os.path.join(tmp, "train.einfds"))
            loaded = load_dataset(path)
            self.assertEqual(loaded.grid, self.ds.grid)
            self.assertEqual(loaded.params, self.params)
            for a, b in zip(loaded.blocks(), self.ds.blocks()):
                self.assertTrue(torch.equal(a, b))
            with open(path, "rb") as f:
                blob = f.read()
            with open(path, "wb") as f:
                f.write(blob[:-16])
            with self.assertRaises(CheckpointError):
                load_dataset(path)


class TestSampler(unittest.TestCase):

    def test_epoch_covers_every_index(self):
        batches = list(EpochBatchSampler(103, 10, seed=1))
        self.assertEqual(len(batches), 10)
        self.assertEqual(sorted(torch.cat(batches).tolist()), list(range(103)))
        self.assertLessEqual(max(len(b) for b in batches) - min(len(b) for b in batches), 1)

    def test_seeded(self):
        a, b = EpochBatchSampler(50, 4, seed=7), EpochBatchSampler(50, 4, seed=7)
        for _ in range(2):
            for x, y in zip(a, b):
                self.assertTrue(torch.equal(x, y))
        first, second = list(a), list(a)
        self.assertFalse(all(torch.equal(x, y) for x, y in zip(first, second)))

    def test_resume(self):
        a = EpochBatchSampler(20, 2, seed=3)
        state = a.state_dict()
        expected = list(a)
        b = EpochBatchSampler(20, 2, seed=99)
        b.load_state_dict(state)
        for x, y in zip(b, expected):
            self.assertTrue(torch.equal(x, y))

    def test_batches_capped(self):
        self.assertEqual(len(EpochBatchSampler(3, 10)), 3)


if __name__ == "__main__":
    unittest.main()

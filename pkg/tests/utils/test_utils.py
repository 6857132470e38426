#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import math
import os
import tempfile
import unittest
from loguru import logger

import numpy as np

import torch

from einfields.utils import (
    CheckpointError,
    ConfigError,
    DomainError,
    EinFieldsError,
    MeterBuffer,
    NonFiniteError,
    check_finite,
    is_f64_strict,
    read_csv,
    set_f64_strict,
    setup_logger,
    write_csv
)


class TestCsv(unittest.TestCase):

    def test_round_trip(self):
        rows = torch.tensor([[0.1, 1.0 / 3.0], [2.0, -5e-17]], dtype=torch.float64)
        with tempfile.TemporaryDirectory() as tmp:
            path = write_csv(os.path.join(tmp, "sub", "a.csv"), ("t", "x"), rows,
                             {"chart": "KerrBL", "a": 0.628})
            with open(path) as f:
                first = f.readline()
            meta, columns, back = read_csv(path)
        self.assertTrue(first.startswith("# {"))
        self.assertEqual(meta, {"a": 0.628, "chart": "KerrBL"})
        self.assertEqual(columns, ["t", "x"])
        np.testing.assert_array_equal(back, rows.numpy())

    def test_single_row(self):
        with tempfile.TemporaryDirectory() as tmp:
            _, _, rows = read_csv(write_csv(os.path.join(tmp, "b.csv"), ("v",), [3.5]))
        self.assertEqual(rows.shape, (1, 1))


class TestErrors(unittest.TestCase):

    def test_hierarchy(self):
        self.assertTrue(issubclass(DomainError, ValueError))
        self.assertTrue(issubclass(ConfigError, EinFieldsError))
        self.assertTrue(issubclass(CheckpointError, IOError))


class TestStrictMode(unittest.TestCase):

    def tearDown(self):
        set_f64_strict(False)

    def test_warn_or_raise(self):
        bad = torch.tensor([1.0, float("nan")])
        self.assertTrue(check_finite(torch.ones(3)))
        set_f64_strict(False)
        self.assertFalse(check_finite(bad, "jet"))
        set_f64_strict(True)
        self.assertTrue(is_f64_strict())
        with self.assertRaises(NonFiniteError):
            check_finite(bad, "jet")


class TestMeters(unittest.TestCase):

    def test_window_and_global(self):
        meters = MeterBuffer(window_size=2)
        for k in range(4):
            meters.update(iter_time=float(k), loss_value=torch.tensor(2.0 * k), lr=0.1)
        self.assertEqual(meters["iter_time"].avg, 2.5)
        self.assertEqual(meters["iter_time"].global_avg, 1.5)
        self.assertEqual(meters["loss_value"].latest, 6.0)
        self.assertEqual(list(meters.get_filtered_meter("loss")), ["loss_value"])
        meters.clear_meters()
        self.assertTrue(math.isnan(meters["lr"].avg))
        self.assertEqual(meters["lr"].latest, 0.1)


class TestLogger(unittest.TestCase):

    def test_file_sink(self):
        with tempfile.TemporaryDirectory() as tmp:
            setup_logger(tmp, filename="run_log.txt", mode="o", redirect=False)
            logger.info("integrating orbit")
            logger.remove()
            with open(os.path.join(tmp, "run_log.txt")) as f:
                self.assertIn("integrating orbit", f.read())


if __name__ == "__main__":
    unittest.main()

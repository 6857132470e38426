#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import math
import os
import tempfile
import unittest

from einfields.exp import Exp, check_exp_value, get_exp
from einfields.utils import ConfigError


class TestMerge(unittest.TestCase):

    def test_casts_to_existing_types(self):
        exp = Exp()
        exp.merge([
            "max_epoch", "5",
            "basic_lr", "1e-3",
            "standard_tt", "true",
            "optimizer", "adam",
            "lambdas", "1,0,2",
            "eval_quantities", "metric,riemann",
        ])
        self.assertEqual(exp.max_epoch, 5)
        self.assertEqual(exp.basic_lr, 1e-3)
        self.assertIs(exp.standard_tt, True)
        self.assertEqual(exp.optimizer, "adam")
        self.assertEqual(exp.lambdas, (1.0, 0.0, 2.0))
        self.assertEqual(exp.eval_quantities, ("metric", "riemann"))

    def test_nested_tuples(self):
        exp = Exp()
        exp.merge(["grid_axes", "((0, 0, 1), (4, 6, 3), (0.5, 2.5, 3), (0, 6, 3))"])
        self.assertEqual(exp.grid_axes[1], (4, 6, 3))
        self.assertEqual(exp.get_grid().size, 27)

    def test_rejections(self):
        for opts in (["no_such_key", "1"], ["max_epoch", "2.5"], ["gradnorm", "maybe"],
                     ["basic_lr", "fast"]):
            with self.assertRaises(ConfigError):
                Exp().merge(opts)


class TestDump(unittest.TestCase):

    def test_round_trip(self):
        exp = get_exp(exp_name="schwarzschild-desk")
        exp.merge(["max_epoch", "7", "orbit_b0", "0.9"])
        with tempfile.TemporaryDirectory() as tmp:
            path = exp.dump_config(os.path.join(tmp, "run", "run_config.txt"))
            again = get_exp(path)
        self.assertIs(type(again), type(exp))
        self.assertEqual(again.config_items(), exp.config_items())
        self.assertEqual(again.grid_axes[3][1], 2.0 * math.pi)

    def test_bad_dump(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "run_config.txt")
            with open(path, "w") as f:
                f.write("max_epoch 3\n")
            with self.assertRaises(ConfigError):
                get_exp(path)
            with self.assertRaises(ConfigError):
                get_exp(os.path.join(tmp, "missing.txt"))


class TestDefaults(unittest.TestCase):

    def test_named_experiments(self):
        for name in ("schwarzschild-desk", "schwarzschild_spherical", "kerr-bl", "kerr-ks",
                     "kerr-orbits", "gw-tt"):
            exp = get_exp(exp_name=name)
            check_exp_value(exp)
            self.assertEqual(exp.exp_name, name.replace("-", "_"))
        with self.assertRaises(ConfigError):
            get_exp(exp_name="rindler")

    def test_desk_sizes(self):
        exp = get_exp(exp_name="schwarzschild-desk")
        self.assertEqual(sum(p.numel() for p in exp.get_model().parameters()), 13450)
        self.assertIn("keys", repr(exp))

    def test_invalid_values(self):
        for key, value in (("optimizer", "sgd"), ("rtol", 1.0), ("chart", "Rindler"),
                           ("a", 2.0), ("sobolev_order", 3), ("quad_theta", 16),
                           ("eval_quantities", ("metric", "ricci")), ("fd_orders", (2,))):
            exp = Exp()
            setattr(exp, key, value)
            with self.assertRaises(ConfigError):
                check_exp_value(exp)


if __name__ == "__main__":
    unittest.main()

#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import json
import os
import tempfile
import unittest
from unittest import mock

import numpy as np

from einfields.tools.cli import COMMANDS, dispatch, make_parser
from einfields.utils import read_csv

SMALL_GRID = ["grid_axes", "((0, 0, 1), (4, 6, 3), (0.5, 2.5, 3), (0, 6, 3))"]


@mock.patch.dict(os.environ, {"EINFIELDS_OUT": ""})
class TestDispatch(unittest.TestCase):

    def test_parser_knows_every_command(self):
        parser = make_parser()
        for command in COMMANDS:
            args = parser.parse_args([command, "-n", "gw-tt", "max_epoch", "3"])
            self.assertEqual(args.opts, ["max_epoch", "3"])

    def test_usage_errors(self):
        self.assertEqual(dispatch([]), 2)
        self.assertEqual(dispatch(["fly"]), 2)

    def test_config_errors(self):
        with tempfile.TemporaryDirectory() as tmp:
            self.assertEqual(dispatch(["report", "-o", tmp, "no_such_key", "1"]), 3)
            self.assertEqual(dispatch(["report", "-o", tmp, "optimizer", "sgd"]), 3)
            self.assertEqual(dispatch(["report", "-n", "rindler", "-o", tmp]), 3)

    def test_eval_analytic(self):
        with tempfile.TemporaryDirectory() as tmp:
            code = dispatch(["eval", "-n", "schwarzschild-desk", "-o", tmp] + SMALL_GRID)
            self.assertEqual(code, 0)
            meta, columns, rows = read_csv(os.path.join(tmp, "eval.csv"))
            self.assertEqual(columns, ["mae", "rel_l2", "points", "components"])
            self.assertEqual(meta["quantities"], ["metric", "christoffel"])
            self.assertTrue(np.all(rows[:, 0] == 0.0))
            self.assertTrue(os.path.isfile(os.path.join(tmp, "run_config.txt")))
            self.assertTrue(os.path.isfile(os.path.join(tmp, "eval_log.txt")))

    def test_env_overrides_out(self):
        with tempfile.TemporaryDirectory() as tmp:
            env_out = os.path.join(tmp, "env")
            with mock.patch.dict(os.environ, {"EINFIELDS_OUT": env_out}):
                code = dispatch(["report", "-n", "schwarzschild-desk", "-o",
                                 os.path.join(tmp, "flag")])
            self.assertEqual(code, 0)
            with open(os.path.join(env_out, "compression.json")) as f:
                report = json.load(f)
        self.assertEqual(report["num_params"], 13450)
        self.assertEqual(report["components"], 10)
        self.assertEqual(report["grid_points"], 32 ** 3)

    def test_gw_ring(self):
        with tempfile.TemporaryDirectory() as tmp:
            code = dispatch(["gw-ring", "-n", "gw-tt", "-o", tmp, "psi4_t", "0.0,6.0,7"])
            self.assertEqual(code, 0)
            meta, columns, rows = read_csv(os.path.join(tmp, "ring.csv"))
        self.assertEqual(columns, ["t", "particle", "x", "y"])
        self.assertEqual(rows.shape, (7 * 16, 4))
        self.assertAlmostEqual(rows[0, 2], 1.0 + 0.5e-6, places=12)
        self.assertEqual(meta["params"]["h_plus"], 1e-6)


if __name__ == "__main__":
    unittest.main()

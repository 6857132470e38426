#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import math
import os
import tempfile
import unittest

from einfields.core import default_train_args, train
from einfields.exp import Exp
from einfields.utils import ConfigError, load_einfield, read_csv


def tiny_exp(output_dir):
    exp = Exp()
    exp.exp_name = "tiny"
    exp.output_dir = output_dir
    exp.grid_axes = ((0.0, 0.0, 1), (3.0, 6.0, 4), (0.0, math.pi, 3), (0.0, 2 * math.pi, 2))
    exp.depth = 1
    exp.width = 8
    exp.max_epoch = 2
    exp.num_batches = 2
    exp.decay_steps = 10
    exp.optimizer = "adam"
    exp.eval_interval = 1
    exp.eval_quantities = ("metric",)
    return exp


class TestTrainer(unittest.TestCase):

    def test_smoke_and_resume(self):
        with tempfile.TemporaryDirectory() as tmp:
            exp = tiny_exp(tmp)
            model, report = train(exp, args=default_train_args(exp, logger="none"))
            run_dir = os.path.join(tmp, "tiny")
            self.assertEqual(report.epochs, [1, 2])
            self.assertEqual(len(report.loss_trace), 4)
            self.assertTrue(math.isfinite(report.best_mae))
            for name in ("train_report.csv", "einfield.einf", "best.einf", "latest_ckpt.pth",
                         "train_log.txt"):
                self.assertTrue(os.path.isfile(os.path.join(run_dir, name)), name)

            meta, columns, rows = read_csv(os.path.join(run_dir, "train_report.csv"))
            self.assertEqual(meta["exp_name"], "tiny")
            self.assertEqual(columns[0], "epoch")
            self.assertEqual(rows.shape[0], 2)
            loaded, _ = load_einfield(os.path.join(run_dir, "einfield.einf"))
            self.assertEqual(loaded.num_parameters(), model.num_parameters())

            exp.max_epoch = 3
            _, resumed = train(exp, args=default_train_args(exp, logger="none", resume=True))
            self.assertEqual(resumed.epochs, [1, 2, 3])

    def test_gradnorm_and_alignment(self):
        with tempfile.TemporaryDirectory() as tmp:
            exp = tiny_exp(tmp)
            exp.max_epoch = 1
            exp.gradnorm = True
            exp.track_alignment = True
            _, report = train(exp, args=default_train_args(exp, logger="none"))
            self.assertEqual(len(report.alignment), 2)
            self.assertTrue(os.path.isfile(os.path.join(tmp, "tiny", "alignment.csv")))

    def test_order_mismatch(self):
        with tempfile.TemporaryDirectory() as tmp:
            exp = tiny_exp(tmp)
            exp.sobolev_order = 0
            dataset = exp.get_dataset(progress=False)
            exp.sobolev_order = 2
            with self.assertRaises(ConfigError):
                train(exp, dataset=dataset, args=default_train_args(exp, logger="none"))


if __name__ == "__main__":
    unittest.main()

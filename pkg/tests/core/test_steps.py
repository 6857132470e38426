#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import math
import unittest

import torch

from einfields.core import TrainReport
from einfields.core.steps import (
    combine_grads,
    cosine_alignment,
    ema_decay,
    gradnorm_weights,
    optimizer_step
)
from einfields.utils import LRScheduler
from einfields.utils.lr_scheduler import cosine_lr


class TestGradNorm(unittest.TestCase):

    def test_unit_norm_weights(self):
        weights, flagged = gradnorm_weights([torch.tensor([2.0]), torch.tensor([4.0])])
        self.assertEqual(weights, [0.5, 0.25])
        self.assertFalse(flagged)

    def test_parameter_lists(self):
        grads = [[torch.tensor([3.0]), torch.tensor([4.0])], [torch.zeros(2), torch.ones(1)]]
        weights, _ = gradnorm_weights(grads)
        self.assertAlmostEqual(weights[0], 0.2)
        self.assertAlmostEqual(weights[1], 1.0)

    def test_all_zero(self):
        weights, flagged = gradnorm_weights([torch.zeros(3), torch.zeros(2)])
        self.assertEqual(weights, [1.0, 1.0])
        self.assertTrue(flagged)

    def test_ema(self):
        self.assertEqual(ema_decay(0.0), 0.0)
        self.assertAlmostEqual(ema_decay(1.0), 0.5)
        weights, _ = gradnorm_weights([torch.tensor([2.0])], previous=[1.5], decay=0.5)
        self.assertAlmostEqual(weights[0], 1.0)

    def test_combine(self):
        params = [torch.nn.Parameter(torch.zeros(2))]
        combine_grads([[torch.ones(2)], [torch.full((2,), 2.0)]], [0.5, 0.25], params)
        self.assertTrue(torch.equal(params[0].grad, torch.ones(2)))

    def test_alignment(self):
        grads = [[torch.tensor([1.0, 0.0])], [torch.tensor([2.0, 0.0])], [torch.tensor([0.0, 3.0])]]
        self.assertEqual(cosine_alignment(grads), [1.0, 0.0])
        self.assertTrue(math.isnan(cosine_alignment([grads[0], [torch.zeros(2)]])[0]))


class TestOptimizerStep(unittest.TestCase):

    def test_rejects_non_finite_gradient(self):
        param = torch.nn.Parameter(torch.ones(3))
        opt = torch.optim.SGD([param], lr=0.1)
        param.grad = torch.tensor([1.0, float("nan"), 0.0])
        self.assertFalse(optimizer_step(opt))
        self.assertTrue(torch.equal(param.detach(), torch.ones(3)))

    def test_sets_learning_rate(self):
        param = torch.nn.Parameter(torch.ones(1))
        opt = torch.optim.SGD([param], lr=0.1)
        param.grad = torch.ones(1)
        self.assertTrue(optimizer_step(opt, lr=0.5))
        self.assertAlmostEqual(float(param), 0.5)
        self.assertEqual(opt.param_groups[0]["lr"], 0.5)


class TestSchedule(unittest.TestCase):

    def test_cosine(self):
        self.assertEqual(cosine_lr(0, 1e-2, 1e-5, 100), 1e-2)
        self.assertAlmostEqual(cosine_lr(50, 1e-2, 1e-5, 100), 0.5 * (1e-2 + 1e-5))
        self.assertEqual(cosine_lr(100, 1e-2, 1e-5, 100), 1e-5)
        self.assertEqual(cosine_lr(1000, 1e-2, 1e-5, 100), 1e-5)

    def test_scheduler(self):
        self.assertEqual(LRScheduler("constant", 3e-3, 10).update_lr(7), 3e-3)
        self.assertEqual(LRScheduler("cos", 1e-2, 10, 1e-4).update_lr(10), 1e-4)
        with self.assertRaises(ValueError):
            LRScheduler("warmcos", 1e-2, 10)


class TestTrainReport(unittest.TestCase):

    def test_epochs_increase(self):
        report = TrainReport()
        report.add_epoch(1, {"loss_value": 1.0}, 1e-3, 0.5)
        self.assertEqual(report.column("loss_value"), [1.0])
        self.assertTrue(math.isnan(report.column("loss_hess")[0]))
        with self.assertRaises(AssertionError):
            report.add_epoch(1, {"loss_value": 0.5}, 1e-3, 1.0)


if __name__ == "__main__":
    unittest.main()

#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import unittest

import torch

from einfields.optim import SOAP, build_optimizer


def regression_problem(seed=0):
    gen = torch.Generator().manual_seed(seed)
    x = torch.randn(64, 6, generator=gen, dtype=torch.float64)
    w = torch.randn(6, 3, generator=gen, dtype=torch.float64)
    return x, x @ w


def fit(optimizer_name, steps=200, lr=5e-2):
    x, y = regression_problem()
    model = torch.nn.Linear(6, 3).double()
    opt = build_optimizer(optimizer_name, model.parameters(), lr)
    losses = []
    for _ in range(steps):
        opt.zero_grad()
        loss = (model(x) - y).pow(2).mean()
        loss.backward()
        opt.step()
        losses.append(float(loss))
    return losses, opt


class TestOptimizers(unittest.TestCase):

    def test_adam(self):
        losses, opt = fit("adam")
        self.assertIsInstance(opt, torch.optim.Adam)
        self.assertLess(losses[-1], 0.5 * losses[0])

    def test_soap(self):
        losses, opt = fit("soap")
        self.assertIsInstance(opt, SOAP)
        self.assertLess(losses[-1], 0.5 * losses[0])
        state = opt.state[next(iter(opt.param_groups[0]["params"]))]
        self.assertEqual(len(state["GG"]), 2)
        self.assertEqual(state["GG"][0].dtype, torch.float64)

    def test_first_step_only_fits_eigenbasis(self):
        param = torch.nn.Parameter(torch.ones(3, 2, dtype=torch.float64))
        opt = SOAP([param], lr=0.1)
        param.grad = torch.ones_like(param)
        opt.step()
        self.assertTrue(torch.equal(param.detach(), torch.ones(3, 2, dtype=torch.float64)))

    def test_invalid(self):
        with self.assertRaises(ValueError):
            build_optimizer("lbfgs", [torch.nn.Parameter(torch.ones(2))], 1e-3)
        with self.assertRaises(ValueError):
            SOAP([torch.nn.Parameter(torch.ones(2))], lr=0.0)


if __name__ == "__main__":
    unittest.main()

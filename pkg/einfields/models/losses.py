#!/usr/bin/env python
# -*- encoding: utf-8 -*-
# Copyright (c) Megvii Inc. All rights reserved.

import torch
import torch.nn as nn

__all__ = ["SobolevLoss", "LOSS_NAMES"]

LOSS_NAMES = ("loss_value", "loss_jac", "loss_hess")


class SobolevLoss(nn.Module):
    """
    Squared residuals of values, input Jacobians and input Hessians.

    Each term sums the squared residual over components (10, 40 and 100 packed
    entries) and averages over the batch. `order` selects how many derivative terms
    are active.
    """

    def __init__(self, order=2, reduction="mean"):
        super(SobolevLoss, self).__init__()
        assert order in (0, 1, 2), "sobolev order must be 0, 1 or 2"
        self.order = order
        self.reduction = reduction

    def _term(self, pred, target):
        if target is None:
            raise ValueError("missing derivative block for an active sobolev term")
        assert pred.shape == target.shape, "shape mismatch {} vs {}".format(
            tuple(pred.shape), tuple(target.shape))
        loss = (pred - target).pow(2).flatten(1).sum(1)
        if self.reduction == "mean":
            loss = loss.mean()
        elif self.reduction == "sum":
            loss = loss.sum()
        return loss

    def forward(self, preds, targets):
        """
        Args:
            preds (sequence): predicted value, jac, hess (as many as `order` + 1).
            targets (sequence): target blocks in the same layout; None for absent ones.

        Return:
            list of the active loss components.
        """
        assert preds[0].shape[0] > 0, "empty batch"
        return [self._term(preds[j], targets[j]) for j in range(self.order + 1)]

    @staticmethod
    def combine(components, weights):
        total = 0.0
        for lam, comp in zip(weights, components):
            total = total + lam * comp
        return total

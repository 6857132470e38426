#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# Copyright (c) Megvii Inc. All rights reserved.

import math
from functools import partial

__all__ = ["LRScheduler", "cosine_lr", "constant_lr"]


class LRScheduler:
    def __init__(self, name, lr, decay_steps, final_lr=0.0, **kwargs):
        """
        Supported lr schedulers: [cos, constant]

        Args:
            lr (float): initial learning rate.
            decay_steps (int): number of optimizer steps of the cosine decay.
            final_lr (float): learning rate reached at `decay_steps` and kept afterwards.
        """
        assert lr > 0, "learning rate must be positive, got {}".format(lr)
        assert decay_steps > 0, "decay steps must be positive, got {}".format(decay_steps)
        self.lr = lr
        self.final_lr = final_lr
        self.decay_steps = decay_steps

        self.__dict__.update(kwargs)

        self.lr_func = self._get_lr_func(name)

    def update_lr(self, iters):
        return self.lr_func(iters)

    def _get_lr_func(self, name):
        if name == "cos":
            lr_func = partial(cosine_lr, lr=self.lr, final_lr=self.final_lr,
                              decay_steps=self.decay_steps)
        elif name == "constant":
            lr_func = partial(constant_lr, self.lr)
        else:
            raise ValueError("Scheduler version {} not supported.".format(name))
        return lr_func


def cosine_lr(iters, lr, final_lr, decay_steps):
    """Cosine annealing from `lr` to `final_lr`, clamped after `decay_steps`."""
    assert iters >= 0, "step must be non-negative"
    if iters >= decay_steps:
        return final_lr
    return final_lr + 0.5 * (lr - final_lr) * (1.0 + math.cos(math.pi * iters / decay_steps))


def constant_lr(lr, iters):
    return lr

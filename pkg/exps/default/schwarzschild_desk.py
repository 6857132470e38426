#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# Copyright (c) Megvii, Inc. and its affiliates.

import math
import os

from einfields.exp import Exp as MyExp


class Exp(MyExp):
    def __init__(self):
        super(Exp, self).__init__()
        self.chart = "SchwarzschildSpherical"
        self.grid_axes = (
            (0.0, 0.0, 1),
            (2.5, 150.0, 32),
            (0.0, math.pi, 32),
            (0.0, 2.0 * math.pi, 32),
        )
        self.depth = 3
        self.width = 64
        self.max_epoch = 100
        self.num_batches = 10
        self.decay_steps = 1000
        self.basic_lr = 1e-2
        self.final_lr = 1e-5
        self.exp_name = os.path.split(os.path.realpath(__file__))[1].split(".")[0]

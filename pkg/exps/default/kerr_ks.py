#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# Copyright (c) Megvii, Inc. and its affiliates.

import os

from einfields.exp import Exp as MyExp


class Exp(MyExp):
    def __init__(self):
        super(Exp, self).__init__()
        self.chart = "KerrKS"
        self.a = 0.7
        self.grid_axes = (
            (0.0, 0.0, 1),
            (-3.0, 3.0, 128),
            (-3.0, 3.0, 128),
            (0.1, 3.0, 128),
        )
        self.grid_open = ((False, False),) * 4
        self.depth = 5
        self.width = 190
        self.output_mode = "full16"
        self.decay_steps = 6000
        self.exp_name = os.path.split(os.path.realpath(__file__))[1].split(".")[0]

#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# Copyright (c) Megvii, Inc. and its affiliates.

import os

from einfields.exp import Exp as MyExp


class Exp(MyExp):
    def __init__(self):
        super(Exp, self).__init__()
        self.chart = "GWCartesianTT"
        self.M = 0.0
        self.h_plus = 1e-6
        self.h_cross = 1e-6
        self.omega = 1.0
        # traceless strain, as used by the ring and psi4 analyses
        self.standard_tt = True
        self.grid_axes = (
            (0.0, 10.0, 140),
            (0.0, 10.0, 10),
            (0.0, 10.0, 10),
            (0.0, 10.0, 140),
        )
        self.grid_open = ((False, False),) * 4
        self.depth = 5
        self.width = 128
        self.output_mode = "full16"
        self.decay_steps = 4000
        self.exp_name = os.path.split(os.path.realpath(__file__))[1].split(".")[0]

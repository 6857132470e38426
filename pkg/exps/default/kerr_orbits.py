#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# Copyright (c) Megvii, Inc. and its affiliates.

import os

from einfields.exp import Exp as MyExp


class Exp(MyExp):
    def __init__(self):
        super(Exp, self).__init__()
        self.chart = "KerrBL"
        self.a = 0.628
        self.horizon_margin = 0.0
        self.integrator = "DOP853"
        self.tau_end = 2000.0
        # (name, E, L_z, r0) of equatorial orbits; bound orbits need E < 1
        self.kerr_orbits = (
            ("prograde", 0.955, 3.5452, 10.0),
            ("retrograde", 0.966, -4.2175, 12.0),
            ("eccentric", 0.97, 3.5452, 10.0),
        )
        self.exp_name = os.path.split(os.path.realpath(__file__))[1].split(".")[0]

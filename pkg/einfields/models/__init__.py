#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# Copyright (c) Megvii Inc. All rights reserved.

from .einfield import *
from .losses import LOSS_NAMES, SobolevLoss
from .network_blocks import GaborWavelet, Sine, get_activation

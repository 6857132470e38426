#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# Copyright (c) Megvii, Inc. and its affiliates.

from .dataset import *
from .grid import AxisSpec, GridSpec
from .samplers import EpochBatchSampler

#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# Copyright (c) Megvii Inc. All rights reserved.

from .base_exp import BaseExp
from .build import get_exp
from .einfield_base import Exp, check_exp_value

#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# Copyright (c) Megvii Inc. All rights reserved.

from .checkpoint import *
from .csv_io import *
from .errors import *
from .logger import *
from .lr_scheduler import *
from .metric import *
from .setup_env import *

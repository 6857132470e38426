#!/usr/bin/env python3
# -*- coding:utf-8 -*-

from .catalog import *
from .charts import *
from .components import *
from .transforms import *

#!/usr/bin/env python3
# -*- coding:utf-8 -*-

from .deviation import *
from .initial_conditions import *
from .integrate import *
from .providers import *
from .state import *

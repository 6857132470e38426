#!/usr/bin/env python3
# -*- coding:utf-8 -*-

from .compression import *
from .field_evaluator import *
from .finite_difference import *
from .metrics import *
from .tomography import *

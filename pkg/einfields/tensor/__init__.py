#!/usr/bin/env python3
# -*- coding:utf-8 -*-

from .symmetric import *
from .tensor4 import *

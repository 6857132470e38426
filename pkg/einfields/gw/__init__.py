#!/usr/bin/env python3
# -*- coding:utf-8 -*-

from .power import *
from .psi4 import *
from .ring import *
from .strain import *
from .swsh import *

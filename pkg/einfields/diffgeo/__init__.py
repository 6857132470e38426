#!/usr/bin/env python3
# -*- coding:utf-8 -*-

from .christoffel import *
from .curvature import *
from .derivatives import *
from .transport import *

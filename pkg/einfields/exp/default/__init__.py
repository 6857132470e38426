#!/usr/bin/env python3
# -*- coding:utf-8 -*-

# einfields.exp.default.<name> -> exps/default/<name>.py in a source checkout
from einfields._source_checkout import serve_directory

serve_directory(__name__, "exps/default")

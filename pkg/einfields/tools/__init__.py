#!/usr/bin/env python3
# -*- coding:utf-8 -*-

# einfields.tools.<command> -> tools/<command>.py in a source checkout
from einfields._source_checkout import serve_directory

serve_directory(__name__, "tools")

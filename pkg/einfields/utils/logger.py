#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import os
import sys
from loguru import logger

__all__ = ["LOG_FORMAT", "StreamToLoguru", "redirect_sys_output", "setup_logger"]

LOG_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
    "<level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
)


class StreamToLoguru:
    """
    File-like object standing in for stdout/stderr.

    Writes issued from one of `modules` (scipy warnings, tqdm bars) are split into
    lines and logged at `level`; everything else goes to the real stdout.
    """

    def __init__(self, level="INFO", modules=("scipy", "tqdm", "torch")):
        self.level = level
        self.modules = tuple(modules)
        self._pending = ""

    def _from_tracked_module(self):
        # frame 0 is this method, 1 is write
        name = sys._getframe(2).f_globals.get("__name__", "")
        return name.split(".", 1)[0] in self.modules

    def write(self, buf):
        if not self._from_tracked_module():
            sys.__stdout__.write(buf)
            return
        lines = (self._pending + buf).split("\n")
        self._pending = lines.pop()
        for line in lines:
            if line.strip():
                logger.opt(depth=1).log(self.level, line.rstrip())

    def flush(self):
        if self._pending.strip():
            logger.log(self.level, self._pending.rstrip())
        self._pending = ""
        return sys.__stdout__.flush()

    def isatty(self):
        return sys.__stdout__.isatty()

    def fileno(self):
        return sys.__stdout__.fileno()


def redirect_sys_output(log_level="INFO"):
    stream = StreamToLoguru(log_level)
    sys.stdout = stream
    sys.stderr = stream


def setup_logger(save_dir, filename="log.txt", mode="a", redirect=True, level=None):
    """
    Log to stderr and to `save_dir/filename`.

    Args:
        mode (str): "a" appends to an existing log, "o" overwrites it.
        redirect (bool): route stdout/stderr of scipy, tqdm and torch through loguru.
        level (str): console level; defaults to $EINFIELDS_LOG_LEVEL or INFO. The file
            always records DEBUG and above.
    """
    assert mode in ("a", "o"), "log mode must be `a` or `o`, got {}".format(mode)
    level = level or os.environ.get("EINFIELDS_LOG_LEVEL", "INFO")
    os.makedirs(save_dir, exist_ok=True)
    save_file = os.path.join(save_dir, filename)
    if mode == "o" and os.path.exists(save_file):
        os.remove(save_file)

    logger.remove()
    logger.add(sys.__stderr__, format=LOG_FORMAT, level=level)
    logger.add(save_file, format=LOG_FORMAT, level="DEBUG")
    if redirect:
        redirect_sys_output(level)
    return logger

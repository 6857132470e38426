#!/usr/bin/env python3
# -*- coding:utf-8 -*-

from collections import defaultdict, deque
import psutil

import torch

__all__ = ["AverageMeter", "MeterBuffer", "mem_usage"]

_MIB = 1 << 20


def mem_usage():
    """Resident memory of this process in MiB."""
    return psutil.Process().memory_info().rss / _MIB


class AverageMeter:
    """
    Scalar series with a windowed average and a running global average.

    `clear` empties the window only; `latest` and the global average survive it, so
    per-epoch bookkeeping can still read the last learning rate after a log flush.
    """

    def __init__(self, window_size=50):
        self.window = deque(maxlen=window_size)
        self.count = 0
        self.total = 0.0
        self.latest = None

    def update(self, value):
        value = float(value)
        self.window.append(value)
        self.latest = value
        self.count += 1
        self.total += value

    @property
    def avg(self):
        return sum(self.window) / len(self.window) if self.window else float("nan")

    @property
    def global_avg(self):
        return self.total / self.count if self.count else 0.0

    def clear(self):
        self.window.clear()


class MeterBuffer(defaultdict):
    """Named `AverageMeter`s created on first use, e.g. iter_time, lr, loss_value."""

    def __init__(self, window_size=20):
        super().__init__(lambda: AverageMeter(window_size))
        self.window_size = window_size

    def update(self, **values):
        for name, value in values.items():
            if isinstance(value, torch.Tensor):
                value = value.detach()
            self[name].update(value)

    def get_filtered_meter(self, filter_key="time"):
        return {k: v for k, v in self.items() if filter_key in k}

    def clear_meters(self):
        for meter in self.values():
            meter.clear()

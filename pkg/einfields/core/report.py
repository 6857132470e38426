#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import math
from dataclasses import dataclass, field
from typing import List

from einfields.models import LOSS_NAMES
from einfields.utils import write_csv

__all__ = ["REPORT_COLUMNS", "TrainReport"]

REPORT_COLUMNS = ("epoch",) + LOSS_NAMES + ("lr", "wallclock_s")


@dataclass
class TrainReport:
    """Per-epoch losses, the per-step loss trace and evaluation results of a run."""

    rows: List[tuple] = field(default_factory=list)
    loss_trace: List[float] = field(default_factory=list)
    # (step, cos(value, jac), cos(value, hess))
    alignment: List[tuple] = field(default_factory=list)
    eval_reports: list = field(default_factory=list)
    best_mae: float = math.inf
    rejected_steps: int = 0
    gradnorm_flags: int = 0

    def add_epoch(self, epoch, losses, lr, wallclock):
        assert not self.rows or epoch > self.rows[-1][0], "epoch indices must increase"
        values = [losses.get(name, math.nan) for name in LOSS_NAMES]
        self.rows.append((epoch, *values, lr, wallclock))

    @property
    def epochs(self):
        return [r[0] for r in self.rows]

    def column(self, name):
        j = REPORT_COLUMNS.index(name)
        return [r[j] for r in self.rows]

    def to_csv(self, path, meta=None):
        return write_csv(path, REPORT_COLUMNS, self.rows, meta)

    def alignment_csv(self, path, meta=None):
        return write_csv(path, ("step", "cos_value_jac", "cos_value_hess"), self.alignment, meta)

    def state_dict(self):
        return {
            "rows": list(self.rows),
            "loss_trace": list(self.loss_trace),
            "alignment": list(self.alignment),
            "best_mae": self.best_mae,
            "rejected_steps": self.rejected_steps,
            "gradnorm_flags": self.gradnorm_flags,
        }

    def load_state_dict(self, state):
        for k, v in state.items():
            setattr(self, k, v)

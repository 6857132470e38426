#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import copy
import threading

from loguru import logger

import torch

from einfields.diffgeo import check_field_domain, christoffel_field
from einfields.metrics import AnalyticMetric, ChartId, MetricParams

__all__ = ["ChristoffelProvider"]


class ChristoffelProvider:
    """
    Connection source for geodesic integration.

    Wraps a metric field (analytic catalog entry or trained EinField) and returns
    Gamma^mu_{rho sigma} at single points. Analytic providers reject points outside
    the chart domain; learned providers only count queries outside the training box.
    """

    def __init__(self, field, chart, params: MetricParams, learned=False):
        self.field = field
        self.chart = ChartId.parse(chart)
        self.params = params
        self.learned = learned
        self.calls = 0
        self.outside = 0
        self._lock = threading.Lock()
        self._gamma = christoffel_field(field)

    @classmethod
    def analytic(cls, chart, params: MetricParams):
        return cls(AnalyticMetric(chart, params), chart, params)

    @classmethod
    def from_model(cls, model):
        field = model.metric_field()
        return cls(field, model.chart, model.params, learned=True)

    def check(self, x):
        if self.learned:
            inside = bool(self.field.model.in_box(x).all())
            if not inside:
                self.outside += 1
                if self.outside == 1:
                    logger.warning("geodesic left the training box of the field at x={}".format(
                        x.tolist()))
            return
        check_field_domain(self.field, x)

    def __call__(self, x):
        x = torch.as_tensor(x, dtype=torch.float64)
        self.check(x)
        self.calls += 1
        with torch.no_grad():
            return self._gamma(x)

    def fork(self):
        """Copy sharing the field, with its own counters, for one integration run."""
        child = copy.copy(self)
        child.calls = 0
        child.outside = 0
        child._lock = threading.Lock()
        return child

    def absorb(self, child):
        """Add the counters of a forked provider to the running totals."""
        with self._lock:
            self.calls += child.calls
            self.outside += child.outside

    def metric(self, x):
        with torch.no_grad():
            return self.field(torch.as_tensor(x, dtype=torch.float64))

    def summary(self):
        return {"rhs_calls": self.calls, "outside_box": self.outside, "learned": self.learned}

    def __repr__(self):
        kind = "learned" if self.learned else "analytic"
        return "ChristoffelProvider({}, chart={})".format(kind, self.chart.value)

#!/usr/bin/env python3
# -*- coding:utf-8 -*-

from typing import Callable, Dict, NamedTuple

import torch

from einfields.tensor import sym_pack

from . import kerr, schwarzschild, waves
from .charts import ChartId, MetricParams, as_coords, check_domain
from .components import minkowski_cartesian

__all__ = [
    "MetricFormulas",
    "METRIC_CATALOG",
    "AnalyticMetric",
    "metric_fn",
    "background_fn",
    "distortion_fn",
    "metric_eval",
    "background_eval",
    "distortion_eval",
]


class MetricFormulas(NamedTuple):
    metric: Callable
    background: Callable
    distortion: Callable


def _zero(x, params=None):
    return torch.zeros(x.shape[:-1] + (4, 4), dtype=x.dtype)


def _ks_flat(x, params=None):
    return minkowski_cartesian(x)


METRIC_CATALOG: Dict[ChartId, MetricFormulas] = {
    ChartId.SCHWARZSCHILD_SPHERICAL: MetricFormulas(
        schwarzschild.spherical_metric,
        schwarzschild.spherical_background,
        schwarzschild.spherical_distortion,
    ),
    ChartId.SCHWARZSCHILD_KS: MetricFormulas(
        schwarzschild.kerr_schild_metric, _ks_flat, schwarzschild.kerr_schild_distortion,
    ),
    ChartId.SCHWARZSCHILD_EF: MetricFormulas(
        schwarzschild.eddington_finkelstein_metric,
        schwarzschild.eddington_finkelstein_background,
        schwarzschild.eddington_finkelstein_distortion,
    ),
    ChartId.KERR_BL: MetricFormulas(
        kerr.boyer_lindquist_metric,
        kerr.boyer_lindquist_background,
        kerr.boyer_lindquist_distortion,
    ),
    ChartId.KERR_KS: MetricFormulas(
        kerr.kerr_schild_metric, _ks_flat, kerr.kerr_schild_distortion,
    ),
    ChartId.KERR_EF: MetricFormulas(
        kerr.eddington_finkelstein_metric,
        kerr.eddington_finkelstein_background,
        kerr.eddington_finkelstein_distortion,
    ),
    ChartId.GW_CARTESIAN_TT: MetricFormulas(waves.tt_metric, _ks_flat, waves.tt_distortion),
    ChartId.MINKOWSKI_CARTESIAN: MetricFormulas(minkowski_cartesian, _ks_flat, _zero),
}


def metric_fn(chart):
    return METRIC_CATALOG[ChartId.parse(chart)].metric


def background_fn(chart):
    return METRIC_CATALOG[ChartId.parse(chart)].background


def distortion_fn(chart):
    return METRIC_CATALOG[ChartId.parse(chart)].distortion


class AnalyticMetric:
    """
    Closed-form metric field of one chart, callable on float64 tensors (..., 4).

    `kind` selects the full metric, the flat background or the distortion. The
    call does no domain checking so it can run under `torch.func` transforms; use
    `check` beforehand.
    """

    def __init__(self, chart, params: MetricParams, kind="metric"):
        self.chart = ChartId.parse(chart)
        self.params = params
        assert kind in ("metric", "background", "distortion"), "unknown kind {}".format(kind)
        self.kind = kind
        self._fn = getattr(METRIC_CATALOG[self.chart], kind)

    def __call__(self, x):
        return self._fn(x, self.params)

    def check(self, x):
        check_domain(self.chart, self.params, x)

    def background(self):
        return AnalyticMetric(self.chart, self.params, "background")

    def distortion(self):
        return AnalyticMetric(self.chart, self.params, "distortion")

    def __repr__(self):
        return "AnalyticMetric(chart={}, kind={}, params={})".format(
            self.chart.value, self.kind, self.params)


def _evaluate(chart, params, x, kind):
    chart = ChartId.parse(chart)
    coords = as_coords(x)
    check_domain(chart, params, coords)
    return sym_pack(getattr(METRIC_CATALOG[chart], kind)(coords, params))


def metric_eval(chart, params: MetricParams, x):
    """Exact metric g_ab(x) as a `SymMetric`."""
    return _evaluate(chart, params, x, "metric")


def background_eval(chart, params: MetricParams, x):
    """Flat background of `chart` at x, in the same coordinates."""
    return _evaluate(chart, params, x, "background")


def distortion_eval(chart, params: MetricParams, x):
    """Closed-form distortion g - background at x."""
    return _evaluate(chart, params, x, "distortion")

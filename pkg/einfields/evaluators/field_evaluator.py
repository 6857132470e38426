#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import time
from loguru import logger
from tabulate import tabulate
from tqdm import tqdm

import torch

from einfields.autodiff import metric_jet
from einfields.diffgeo import curvature_from_jet
from einfields.metrics import AnalyticMetric, ChartId, MetricParams, check_domain
from einfields.tensor import pack_symmetric

from .metrics import error_report

__all__ = ["QUANTITIES", "FieldEvaluator"]

QUANTITIES = ("metric", "christoffel", "riemann", "kretschmann")


def _quantities(bundle, names):
    out = {}
    for name in names:
        if name == "metric":
            out[name] = pack_symmetric(bundle.g)
        elif name == "christoffel":
            out[name] = bundle.gamma
        elif name == "riemann":
            out[name] = bundle.riemann_down
        else:
            out[name] = bundle.kretschmann[..., None]
    return out


class FieldEvaluator:
    """
    Held-out evaluation of a learned metric against the analytic one.

    Both fields are differentiated at the same points and compared on the metric,
    the Christoffel symbols, the lowered Riemann tensor and the Kretschmann scalar.
    """

    def __init__(self, chart, params: MetricParams, points, quantities=QUANTITIES,
                 batch_size=4096, progress=False):
        """
        Args:
            points (tensor (N, 4)): evaluation points, normally the staggered grid of the
                training box.
            quantities (sequence of str): subset of QUANTITIES.
        """
        self.chart = ChartId.parse(chart)
        self.params = params
        self.points = torch.as_tensor(points, dtype=torch.float64).reshape(-1, 4)
        for q in quantities:
            assert q in QUANTITIES, "unknown quantity {}".format(q)
        self.quantities = tuple(quantities)
        self.batch_size = batch_size
        self.progress = progress
        check_domain(self.chart, params, self.points)
        self._truth = None

    def _collect(self, field):
        parts = {q: [] for q in self.quantities}
        chunks = torch.split(self.points, self.batch_size)
        for chunk in tqdm(chunks, desc="eval", disable=not self.progress):
            values = _quantities(curvature_from_jet(metric_jet(field, chunk)), self.quantities)
            for q, v in values.items():
                parts[q].append(v.detach())
        return {q: torch.cat(v) for q, v in parts.items()}

    @property
    def truth(self):
        if self._truth is None:
            self._truth = self._collect(AnalyticMetric(self.chart, self.params))
        return self._truth

    def evaluate(self, model):
        """
        Return:
            metric_mae (float): MAE of the reconstructed metric, used for model selection.
            reports (list of EvalReport): one per quantity.
            summary (str): tabulated reports.
        """
        start = time.time()
        field = model.metric_field() if hasattr(model, "metric_field") else model
        with torch.no_grad():
            estimate = self._collect(field)
        reports = [
            error_report(q, self.truth[q], estimate[q], self.chart) for q in self.quantities
        ]
        summary = tabulate(
            [(r.quantity, r.mae, r.rel_l2, r.points, r.components) for r in reports],
            headers=["quantity", "MAE", "rel-l2", "points", "components"],
            tablefmt="fancy_grid",
            floatfmt=".3e",
        )
        logger.info("evaluated {} points in {:.2f}s".format(len(self.points), time.time() - start))
        by_name = {r.quantity: r for r in reports}
        metric_mae = by_name["metric"].mae if "metric" in by_name else reports[0].mae
        return metric_mae, reports, summary

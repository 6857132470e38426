#!/usr/bin/env python3
# -*- coding:utf-8 -*-

from dataclasses import asdict, dataclass

import torch

__all__ = ["EvalReport", "mae", "rel_l2", "error_report"]


def _pair(truth, estimate):
    truth = torch.as_tensor(truth, dtype=torch.float64)
    estimate = torch.as_tensor(estimate, dtype=torch.float64)
    if truth.shape != estimate.shape:
        raise ValueError("shape mismatch {} vs {}".format(
            tuple(truth.shape), tuple(estimate.shape)))
    if truth.numel() == 0:
        raise ValueError("need at least one sample and one component")
    return truth, estimate


def mae(truth, estimate):
    """(1 / (m n)) sum over samples and components of |truth - estimate|."""
    truth, estimate = _pair(truth, estimate)
    return float((truth - estimate).abs().mean())


def rel_l2(truth, estimate):
    """||truth - estimate||_2 / ||truth||_2 over all samples and components."""
    truth, estimate = _pair(truth, estimate)
    norm = torch.linalg.vector_norm(truth)
    if float(norm) == 0.0:
        raise ValueError("relative error of a zero-norm reference is undefined")
    return float(torch.linalg.vector_norm(truth - estimate) / norm)


@dataclass
class EvalReport:
    quantity: str
    mae: float
    rel_l2: float
    points: int
    components: int
    chart: str

    def __post_init__(self):
        assert self.points > 0 and self.components > 0, "empty evaluation"

    def as_dict(self):
        return asdict(self)


def error_report(quantity, truth, estimate, chart):
    """
    Build an `EvalReport` for (m, ...) shaped samples; trailing dims are components.
    rel_l2 is reported as NaN when the reference vanishes identically.
    """
    truth, estimate = _pair(truth, estimate)
    truth = truth.reshape(truth.shape[0], -1) if truth.dim() > 1 else truth[:, None]
    estimate = estimate.reshape(truth.shape)
    try:
        rel = rel_l2(truth, estimate)
    except ValueError:
        rel = float("nan")
    return EvalReport(
        quantity=quantity,
        mae=mae(truth, estimate),
        rel_l2=rel,
        points=truth.shape[0],
        components=truth.shape[1],
        chart=getattr(chart, "value", str(chart)),
    )

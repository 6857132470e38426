#!/usr/bin/env python3
# -*- coding:utf-8 -*-

from loguru import logger

import torch
from torch.func import vmap

from einfields.autodiff import metric_jet_fn
from einfields.diffgeo import riemann_tensor
from einfields.utils import check_finite

__all__ = [
    "flat_norm",
    "gradnorm_weights",
    "ema_decay",
    "component_grads",
    "combine_grads",
    "cosine_alignment",
    "optimizer_step",
    "ricci_residual",
]


def flat_norm(grads):
    return float(torch.sqrt(sum(g.pow(2).sum() for g in grads)))


def ema_decay(half_life):
    """Per-step EMA factor for a half-life in steps; 0 disables smoothing."""
    return 0.5 ** (1.0 / half_life) if half_life > 0 else 0.0


def gradnorm_weights(grads, previous=None, decay=0.0):
    """
    Unit-norm loss weights lambda_j = 1 / ||g_j||.

    Args:
        grads (list): per component, a list of parameter gradients (or one tensor).
        previous (list of float): weights of the previous step for EMA smoothing.
        decay (float): EMA factor in [0, 1); 0 keeps the raw weights.

    Return:
        (list of float, bool): the weights and whether every gradient was zero, in which
        case identity weights are returned.
    """
    norms = [flat_norm(g if isinstance(g, (list, tuple)) else [g]) for g in grads]
    if all(n == 0.0 for n in norms):
        logger.warning("all loss gradients are zero, falling back to unit weights")
        return [1.0] * len(norms), True
    weights = [1.0 / n if n > 0 else 0.0 for n in norms]
    if previous is not None and decay > 0:
        weights = [decay * p + (1.0 - decay) * w for p, w in zip(previous, weights)]
    return weights, False


def component_grads(components, params):
    """Parameter gradients of every loss component, zeros for unused parameters."""
    out = []
    for comp in components:
        grads = torch.autograd.grad(comp, params, retain_graph=True, allow_unused=True)
        out.append([torch.zeros_like(p) if g is None else g for p, g in zip(params, grads)])
    return out


def combine_grads(grads, weights, params):
    """Write sum_j w_j g_j into the .grad of every parameter."""
    for i, p in enumerate(params):
        p.grad = sum(w * g[i] for w, g in zip(weights, grads))


def cosine_alignment(grads):
    """Cosine similarity of the value-loss gradient with each derivative-loss gradient."""
    ref = torch.cat([g.reshape(-1) for g in grads[0]])
    out = []
    for other in grads[1:]:
        vec = torch.cat([g.reshape(-1) for g in other])
        denom = torch.linalg.vector_norm(ref) * torch.linalg.vector_norm(vec)
        out.append(float(ref @ vec / denom) if float(denom) > 0 else float("nan"))
    return out


def optimizer_step(optimizer, lr=None):
    """
    Apply one optimizer update unless some parameter gradient is non-finite.

    Return:
        bool: True if the step was taken.
    """
    grads = [p.grad.reshape(-1) for group in optimizer.param_groups
             for p in group["params"] if p.grad is not None]
    if grads and not check_finite(torch.cat(grads), "parameter gradient"):
        logger.warning("optimizer step rejected")
        optimizer.zero_grad()
        return False
    if lr is not None:
        for param_group in optimizer.param_groups:
            param_group["lr"] = lr
    optimizer.step()
    return True


def ricci_residual(model, x):
    """Mean over the batch of sum_ab R_ab^2 of the reconstructed metric."""
    jet = metric_jet_fn(model.metric, order=2)

    def ricci(y):
        g, jac, hess = jet(y)
        return torch.einsum("lalb->ab", riemann_tensor(g, jac, hess))

    return vmap(ricci)(x).pow(2).flatten(1).sum(1).mean()

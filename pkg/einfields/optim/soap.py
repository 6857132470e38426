#!/usr/bin/env python3
# -*- coding:utf-8 -*-

from typing import Iterable, Optional, Tuple

import torch

__all__ = ["SOAP", "build_optimizer"]


class SOAP(torch.optim.Optimizer):
    """
    Adam run in the eigenbasis of a Shampoo (Kronecker-factored) preconditioner.

    Every matrix-shaped parameter keeps one running second-moment factor per
    dimension; their eigenvectors are refreshed every `precondition_frequency` steps
    by one power iteration plus QR. Vectors (biases) fall back to plain Adam unless
    `precondition_1d` is set. All state is kept in float64.
    """

    def __init__(
        self,
        params: Iterable[torch.nn.Parameter],
        lr: float = 1e-2,
        betas: Tuple[float, float] = (0.95, 0.95),
        shampoo_beta: Optional[float] = None,
        eps: float = 1e-8,
        weight_decay: float = 0.0,
        precondition_frequency: int = 1,
        precondition_1d: bool = False,
        max_precond_dim: int = 4096,
    ):
        if lr <= 0:
            raise ValueError("invalid learning rate {}".format(lr))
        if precondition_frequency < 1:
            raise ValueError("precondition frequency must be >= 1")
        defaults = {
            "lr": lr,
            "betas": tuple(betas),
            "shampoo_beta": betas[1] if shampoo_beta is None else shampoo_beta,
            "eps": eps,
            "weight_decay": weight_decay,
            "precondition_frequency": precondition_frequency,
            "precondition_1d": precondition_1d,
            "max_precond_dim": max_precond_dim,
        }
        super().__init__(params, defaults)

    @torch.no_grad()
    def step(self, closure=None):
        loss = None
        if closure is not None:
            with torch.enable_grad():
                loss = closure()

        for group in self.param_groups:
            beta1, beta2 = group["betas"]
            for p in group["params"]:
                if p.grad is None:
                    continue
                g = p.grad
                state = self.state[p]
                state["step"] = step = state.get("step", -1) + 1

                if "exp_avg" not in state:
                    state["exp_avg"] = torch.zeros_like(g)
                    state["exp_avg_sq"] = torch.zeros_like(g)
                    self._init_preconditioner(g, state, group)
                    # first call only fits the eigenbasis
                    continue

                g_rot = self._project(g, state)
                bc1 = 1 - (1 - beta1) / (1 - beta1 ** step)
                bc2 = 1 - (1 - beta2) / (1 - beta2 ** step)
                state["exp_avg"].lerp_(g, 1 - bc1)
                state["exp_avg_sq"].lerp_(g_rot.square(), 1 - bc2)

                denom = state["exp_avg_sq"].sqrt().add_(group["eps"])
                update = self._project(self._project(state["exp_avg"], state) / denom, state,
                                       back=True)
                p.add_(update, alpha=-group["lr"])
                if group["weight_decay"] > 0:
                    p.mul_(1 - group["lr"] * group["weight_decay"])

                shampoo_beta = group["shampoo_beta"]
                sb = 1 - (1 - shampoo_beta) / (1 - shampoo_beta ** (step + 1))
                self._update_preconditioner(g, state, sb, group["precondition_frequency"])

        return loss

    def _init_preconditioner(self, grad, state, group):
        state["GG"] = []
        state["Q"] = None
        state["precond_shape"] = grad.shape
        matrix_like = grad.dim() > 1 or group["precondition_1d"]
        for s in grad.shape if matrix_like and grad.numel() > 1 else (None,):
            if s is None or s == 1 or s > group["max_precond_dim"]:
                state["GG"].append(None)
            else:
                state["GG"].append(torch.zeros(s, s, dtype=torch.float64, device=grad.device))
        self._update_preconditioner(grad, state, 0.0, 1)

    def _update_preconditioner(self, grad, state, shampoo_beta, frequency):
        grad = grad.reshape(state["precond_shape"])
        for i, m in enumerate(state["GG"]):
            if m is not None:
                others = [*range(i), *range(i + 1, grad.dim())]
                m.lerp_(torch.tensordot(grad, grad, dims=[others, others]), 1 - shampoo_beta)

        if state["Q"] is None:
            state["Q"] = self._eigenbasis(state)
        elif state["step"] % frequency == 0:
            state["Q"] = self._power_qr(state)

    def _project(self, grad, state, back=False):
        shape = grad.shape
        grad = grad.reshape(state["precond_shape"])
        if all(q is None for q in state["Q"]):
            return grad.reshape(shape)
        for q in state["Q"]:
            if q is None:
                grad = grad.movedim(0, -1)
            else:
                grad = torch.tensordot(grad, q, dims=[[0], [1 if back else 0]])
        return grad.reshape(shape)

    @staticmethod
    def _eigenbasis(state):
        out = []
        for m in state["GG"]:
            if m is None:
                out.append(None)
                continue
            _, q = torch.linalg.eigh(m + 1e-30 * torch.eye(m.shape[0], dtype=m.dtype))
            out.append(torch.fliplr(q))
        return out

    @staticmethod
    def _power_qr(state):
        out = []
        for m, q in zip(state["GG"], state["Q"]):
            if m is None:
                out.append(None)
                continue
            mq = m @ q
            order = torch.argsort(torch.einsum("ij,ij->j", q, mq), descending=True)
            q_new = torch.empty_like(q)
            # keep each column where its second-moment statistics live
            q_new[:, order], _ = torch.linalg.qr(mq[:, order])
            out.append(q_new)
        return out


def build_optimizer(name, params, lr, betas=(0.95, 0.95), precondition_frequency=1, eps=1e-8):
    """Adam or SOAP with the training defaults."""
    if name == "adam":
        return torch.optim.Adam(params, lr=lr, betas=tuple(betas), eps=eps)
    if name == "soap":
        return SOAP(params, lr=lr, betas=tuple(betas), eps=eps,
                    precondition_frequency=precondition_frequency)
    raise ValueError("unknown optimizer {}".format(name))

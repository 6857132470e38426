#!/usr/bin/env python3
# -*- coding:utf-8 -*-

from dataclasses import dataclass

import torch

from einfields.autodiff import MetricJet, metric_jet, metric_jet_fn
from einfields.tensor import check_invertible, inverse4

__all__ = [
    "Christoffel",
    "christoffel_symbols",
    "christoffel_derivative",
    "christoffel",
    "christoffel_field",
    "christoffel_at",
    "check_field_domain",
]


@dataclass(frozen=True)
class Christoffel:
    """Gamma^rho_{mu nu}, stored as gamma[..., rho, mu, nu]."""

    gamma: torch.Tensor

    def symmetry_residual(self):
        return float((self.gamma - self.gamma.transpose(-1, -2)).abs().max())


def _first_kind(jac):
    # d_mu g_{s nu} + d_nu g_{s mu} - d_s g_{mu nu}, indexed [..., s, mu, nu]
    return jac.permute(*range(jac.dim() - 3), -2, -3, -1) \
        + jac.permute(*range(jac.dim() - 3), -2, -1, -3) - jac


def christoffel_symbols(g, jac):
    """Levi-Civita connection from g[..., a, b] and jac[..., mu, a, b]; no checks."""
    return 0.5 * torch.einsum("...rs,...smn->...rmn", inverse4(g), _first_kind(jac))


def christoffel_derivative(g, jac, hess):
    """
    d_l Gamma^r_{mn} as [..., l, r, m, n], from the metric jet through
    d g^{-1} = -g^{-1} (d g) g^{-1}.
    """
    ginv = inverse4(g)
    dginv = -torch.einsum("...ra,...lab,...bs->...lrs", ginv, jac, ginv)
    lead = hess.dim() - 4
    batch = tuple(range(lead))
    # hess[..., l, m, a, b]; build d_l of the first-kind combination [..., l, s, m, n]
    d_first = (
        hess.permute(*batch, lead, lead + 2, lead + 1, lead + 3)
        + hess.permute(*batch, lead, lead + 2, lead + 3, lead + 1)
        - hess
    )
    first = _first_kind(jac)
    return 0.5 * (
        torch.einsum("...lrs,...smn->...lrmn", dginv, first)
        + torch.einsum("...rs,...lsmn->...lrmn", ginv, d_first)
    )


def check_field_domain(field, x):
    check = getattr(field, "check", None)
    if check is not None:
        check(x)


def christoffel(mj: MetricJet):
    """Christoffel symbols of a metric jet; rejects near-singular metrics."""
    check_invertible(mj.g)
    return Christoffel(christoffel_symbols(mj.g, mj.jac))


def christoffel_at(field, x):
    check_field_domain(field, x)
    return christoffel(metric_jet(field, x))


def christoffel_field(field):
    """Single-point Gamma(x) of a metric field, composable with `torch.func`."""
    jet = metric_jet_fn(field, order=1)

    def fn(x):
        g, jac = jet(x)
        return christoffel_symbols(g, jac)

    return fn

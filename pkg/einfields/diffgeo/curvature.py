#!/usr/bin/env python3
# -*- coding:utf-8 -*-

from dataclasses import dataclass

import torch
from torch.func import jacfwd, vmap

from einfields.autodiff import MetricJet, check_jet, metric_jet, metric_jet_fn
from einfields.metrics.charts import as_coords
from einfields.tensor import check_invertible, inverse4

from .christoffel import check_field_domain, christoffel_derivative, christoffel_symbols

__all__ = [
    "Riemann",
    "CurvatureBundle",
    "riemann_tensor",
    "riemann_from_jet",
    "riemann",
    "curvature_from_jet",
    "curvature_bundle",
    "kretschmann",
    "riemann_symmetry_residuals",
    "bianchi_first_residual",
    "bianchi_second_residual",
]


@dataclass(frozen=True)
class Riemann:
    """R^d_{abc} as up[..., d, a, b, c] and R_{eabc} = g_{ed} R^d_{abc} as down."""

    up: torch.Tensor
    down: torch.Tensor


@dataclass(frozen=True)
class CurvatureBundle:
    g: torch.Tensor
    gamma: torch.Tensor
    riemann_up: torch.Tensor
    riemann_down: torch.Tensor
    ricci: torch.Tensor
    ricci_scalar: torch.Tensor
    einstein: torch.Tensor
    weyl: torch.Tensor
    kretschmann: torch.Tensor


def riemann_tensor(g, jac, hess):
    """
    R^d_{abc} = d_b G^d_{ac} - d_c G^d_{ab} + G^d_{bl} G^l_{ca} - G^d_{cl} G^l_{ba}.
    """
    gamma = christoffel_symbols(g, jac)
    dgamma = christoffel_derivative(g, jac, hess)
    return (
        torch.einsum("...bdac->...dabc", dgamma)
        - torch.einsum("...cdab->...dabc", dgamma)
        + torch.einsum("...dbl,...lca->...dabc", gamma, gamma)
        - torch.einsum("...dcl,...lba->...dabc", gamma, gamma)
    )


def _lower_first(up, g):
    return torch.einsum("...ed,...dabc->...eabc", g, up)


def riemann_from_jet(mj: MetricJet):
    check_invertible(mj.g)
    up = riemann_tensor(mj.g, mj.jac, mj.hess)
    return Riemann(up, _lower_first(up, mj.g))


def riemann(field, x):
    """Riemann tensor of a metric field at x (one point or a batch)."""
    check_field_domain(field, x)
    return riemann_from_jet(metric_jet(field, x))


def _contractions(g, up, down):
    ginv = inverse4(g)
    ricci = torch.einsum("...lalb->...ab", up)
    scalar = torch.einsum("...ab,...ab->...", ginv, ricci)
    einstein = ricci - 0.5 * scalar[..., None, None] * g
    gg = torch.einsum("...ac,...bd->...abcd", g, g) - torch.einsum("...ad,...bc->...abcd", g, g)
    weyl = (
        down
        - 0.5 * (
            torch.einsum("...ac,...bd->...abcd", g, ricci)
            - torch.einsum("...ad,...bc->...abcd", g, ricci)
            - torch.einsum("...bc,...ad->...abcd", g, ricci)
            + torch.einsum("...bd,...ac->...abcd", g, ricci)
        )
        + scalar[..., None, None, None, None] / 6.0 * gg
    )
    raised = torch.einsum("...ap,...bq,...cr,...ds,...pqrs->...abcd", ginv, ginv, ginv, ginv, down)
    kretsch = torch.einsum("...abcd,...abcd->...", raised, down)
    return ricci, scalar, einstein, weyl, kretsch


def curvature_from_jet(mj: MetricJet):
    """Full curvature chain of Christoffel, Riemann, Ricci, Einstein, Weyl and Kretschmann."""
    rm = riemann_from_jet(mj)
    ricci, scalar, einstein, weyl, kretsch = _contractions(mj.g, rm.up, rm.down)
    return CurvatureBundle(
        g=mj.g,
        gamma=christoffel_symbols(mj.g, mj.jac),
        riemann_up=rm.up,
        riemann_down=rm.down,
        ricci=ricci,
        ricci_scalar=scalar,
        einstein=einstein,
        weyl=weyl,
        kretschmann=kretsch,
    )


def curvature_bundle(field, x):
    check_field_domain(field, x)
    return curvature_from_jet(metric_jet(field, x))


def kretschmann(field, x):
    return curvature_bundle(field, x).kretschmann


def _scale(t):
    return t.abs().flatten(start_dim=t.dim() - 4).amax(-1).clamp_min(1e-300)


def riemann_symmetry_residuals(down):
    """Max residual of the pair (anti)symmetries, relative to max |R_abcd| per point."""
    scale = _scale(down)
    pairs = {
        "antisym_12": down + down.transpose(-4, -3),
        "antisym_34": down + down.transpose(-2, -1),
        "pair_swap": down - down.permute(*range(down.dim() - 4), -2, -1, -4, -3),
    }
    return {
        name: float((_scale(res) / scale).max()) for name, res in pairs.items()
    }


def bianchi_first_residual(down):
    """max |R_abcd + R_acdb + R_adbc| / max |R|."""
    cyc = (
        down
        + torch.einsum("...acdb->...abcd", down)
        + torch.einsum("...adbc->...abcd", down)
    )
    return float((_scale(cyc) / _scale(down)).max())


def _riemann_down_fn(field):
    jet = metric_jet_fn(field, order=2)

    def fn(x):
        g, jac, hess = jet(x)
        return _lower_first(riemann_tensor(g, jac, hess), g)

    return fn


def bianchi_second_residual(field, x):
    """
    Residual of the second Bianchi identity,
    nabla_s R_abcd + nabla_a R_bscd + nabla_b R_sacd, relative to max |nabla R|.

    The derivative of the Riemann tensor is taken by nesting a first-order jet around
    the second-order metric jet.
    """
    check_field_domain(field, x)
    x = as_coords(x).reshape(-1, 4)
    down_fn = _riemann_down_fn(field)
    gamma_fn = lambda y: christoffel_symbols(*metric_jet_fn(field, 1)(y))  # noqa: E731

    def pointwise(y):
        down = down_fn(y)
        # d_s R_abcd with the derivative slot last
        d_down = jacfwd(down_fn)(y)
        gamma = gamma_fn(y)
        nabla = (
            d_down
            - torch.einsum("lsa,lbcd->abcds", gamma, down)
            - torch.einsum("lsb,alcd->abcds", gamma, down)
            - torch.einsum("lsc,abld->abcds", gamma, down)
            - torch.einsum("lsd,abcl->abcds", gamma, down)
        )
        return nabla

    nabla = vmap(pointwise)(x)
    check_jet(nabla, x=x, what="covariant Riemann derivative")
    # nabla[n, a, b, c, d, s] = nabla_s R_abcd
    cyc = (
        torch.einsum("nabcds->nsabcd", nabla)
        + torch.einsum("nbscda->nsabcd", nabla)
        + torch.einsum("nsacdb->nsabcd", nabla)
    )
    scale = nabla.abs().flatten(1).amax(-1).clamp_min(1e-300)
    return float((cyc.abs().flatten(1).amax(-1) / scale).max())

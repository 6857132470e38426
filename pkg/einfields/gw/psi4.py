#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import math
from dataclasses import dataclass

import numpy as np
from tqdm import tqdm

import torch

from einfields.autodiff import derivatives
from einfields.diffgeo import curvature_bundle
from einfields.utils import DomainError, write_csv

from .strain import ComplexStrain

__all__ = [
    "Tetrad",
    "tt_tetrad",
    "check_tetrad",
    "psi4_direct",
    "psi4_weyl",
    "Psi4Grid",
    "psi4_grid",
]

TETRAD_TOL = 1e-10


def _g(g, a, b):
    return torch.einsum("a,ab,b->", a, g.to(a.dtype), b)


@dataclass(frozen=True)
class Tetrad:
    """Null tetrad (l, n, m, conj(m)); components are complex (4,) tensors."""

    l: torch.Tensor  # noqa: E741
    n: torch.Tensor
    m: torch.Tensor

    @property
    def mbar(self):
        return self.m.conj()

    def pairings(self, g):
        """Every pairing g(a, b) of the four vectors, keyed by name."""
        vecs = {"l": self.l, "n": self.n, "m": self.m, "mbar": self.mbar}
        names = list(vecs)
        return {
            (a, b): complex(_g(g, vecs[a], vecs[b]))
            for i, a in enumerate(names) for b in names[i:]
        }


def check_tetrad(tetrad: Tetrad, g, tol=TETRAD_TOL):
    """Raise DomainError unless g(l, n) = -1, g(m, mbar) = 1 and all other pairings vanish."""
    expected = {("l", "n"): -1.0, ("m", "mbar"): 1.0}
    for key, value in tetrad.pairings(g).items():
        target = expected.get(key, 0.0)
        if abs(value - target) > tol:
            raise DomainError("degenerate tetrad: g{} = {} instead of {}".format(
                key, value, target))


def tt_tetrad(g):
    """
    Transverse tetrad of a wave travelling along +z.

    The coordinate basis (d_t, d_x, d_y, d_z) is Gram-Schmidt orthonormalised in g,
    then l = (e_t + e_z)/sqrt2, n = (e_t - e_z)/sqrt2, m = (e_x + i e_y)/sqrt2.
    """
    g = torch.as_tensor(g, dtype=torch.float64)
    basis = []
    for k in range(4):
        v = torch.zeros(4, dtype=torch.float64)
        v[k] = 1.0
        for e in basis:
            v = v - _g(g, v, e) / _g(g, e, e) * e
        norm = _g(g, v, v)
        if k == 0 and norm >= 0 or k > 0 and norm <= 0:
            raise DomainError("metric is not Lorentzian along coordinate axis {}".format(k))
        basis.append(v / torch.sqrt(norm.abs()))
    et, ex, ey, ez = basis
    s = 1.0 / math.sqrt(2.0)
    cplx = torch.complex128
    return Tetrad(
        l=((et + ez) * s).to(cplx),
        n=((et - ez) * s).to(cplx),
        m=torch.complex(ex * s, ey * s),
    )


def psi4_direct(strain: ComplexStrain, x):
    """
    Psi4 = -d_t^2 h_plus + i d_t^2 h_cross from second time derivatives of the strain.

    `x` may be one point (4,) or a batch (..., 4); returns complex128 of the batch shape.
    """
    x = torch.as_tensor(x, dtype=torch.float64)
    _, _, hess = derivatives(strain.components, x, order=2)
    htt = hess[..., 0, 0, :]
    return torch.complex(-htt[..., 0], htt[..., 1])


def psi4_weyl(field, x, tetrad: Tetrad = None):
    """
    Psi4 = C_abcd n^a mbar^b n^c mbar^d at a single point.

    Without a tetrad, the transverse tetrad of the local metric is used.
    """
    x = torch.as_tensor(x, dtype=torch.float64)
    bundle = curvature_bundle(field, x)
    g = bundle.g
    tetrad = tetrad or tt_tetrad(g)
    check_tetrad(tetrad, g)
    weyl = bundle.weyl.to(torch.complex128)
    n, mb = tetrad.n, tetrad.mbar
    return complex(torch.einsum("abcd,a,b,c,d->", weyl, n, mb, n, mb))


@dataclass
class Psi4Grid:
    """Psi4 sampled on the line x = y = 0 over a (z, t) grid; values are (Z, T)."""

    z: np.ndarray
    t: np.ndarray
    values: np.ndarray

    def to_csv(self, path, meta=None):
        zz, tt = np.meshgrid(self.z, self.t, indexing="ij")
        rows = np.stack(
            [zz.ravel(), tt.ravel(), self.values.real.ravel(), self.values.imag.ravel()], axis=1)
        return write_csv(path, ("z", "t", "re_psi4", "im_psi4"), rows, meta or {})


def psi4_grid(z, t, strain: ComplexStrain = None, field=None, progress=False):
    """
    Psi4 over the (z, t) grid, either from a strain (`psi4_direct`) or from the Weyl
    tensor of a metric field (`psi4_weyl`).
    """
    assert (strain is None) != (field is None), "give exactly one of strain or field"
    z = np.asarray(z, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    zz, tt = np.meshgrid(z, t, indexing="ij")
    pts = torch.zeros(zz.shape + (4,), dtype=torch.float64)
    pts[..., 0] = torch.as_tensor(tt)
    pts[..., 3] = torch.as_tensor(zz)
    if strain is not None:
        values = psi4_direct(strain, pts).numpy()
    else:
        flat = pts.reshape(-1, 4)
        values = np.array([
            psi4_weyl(field, p) for p in tqdm(flat, disable=not progress, desc="psi4")
        ]).reshape(zz.shape)
    return Psi4Grid(z, t, values)

#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import comb, factorial

import torch

from einfields.utils import DomainError, write_csv

__all__ = [
    "MIN_QUADRATURE",
    "swsh",
    "SphereQuadrature",
    "gram_matrix",
    "extract_mode",
    "ModeSeries",
    "mode_series",
]

# smallest (theta, phi) grid accepted for mode extraction
MIN_QUADRATURE = (32, 64)


def _check_mode(s, l, m):  # noqa: E741
    if l < abs(s) or abs(m) > l:
        raise DomainError("invalid spin-weighted harmonic s={}, l={}, m={}".format(s, l, m))


def swsh(s, l, m, theta, phi):  # noqa: E741
    """
    Spin-weighted spherical harmonic sY_lm(theta, phi), complex128 of the broadcast shape.

    Binomial-sum form with sin^{2l}(theta/2) cot^k(theta/2) regrouped into
    sin^{2l-k}(theta/2) cos^k(theta/2); every exponent is non-negative, so the poles
    evaluate to their limits.
    """
    _check_mode(s, l, m)
    theta = np.asarray(theta, dtype=np.float64)
    phi = np.asarray(phi, dtype=np.float64)
    norm = (-1.0) ** m * math.sqrt(
        factorial(l + m, exact=True) * factorial(l - m, exact=True) * (2 * l + 1)
        / (4.0 * math.pi * factorial(l + s, exact=True) * factorial(l - s, exact=True))
    )
    sh, ch = np.sin(theta / 2.0), np.cos(theta / 2.0)
    total = np.zeros(np.broadcast(theta, phi).shape, dtype=np.float64)
    for r in range(0, l - s + 1):
        j = r + s - m
        if j < 0 or j > l + s:
            continue
        k = 2 * r + s - m
        coeff = comb(l - s, r, exact=True) * comb(l + s, j, exact=True) * (-1.0) ** (l - r - s)
        total = total + coeff * np.power(sh, 2 * l - k) * np.power(ch, k)
    return norm * total * np.exp(1j * m * phi)


@dataclass(frozen=True)
class SphereQuadrature:
    """Gauss-Legendre nodes in cos(theta) times a uniform trapezoid rule in phi."""

    n_theta: int = 64
    n_phi: int = 128

    def __post_init__(self):
        assert self.n_theta > 0 and self.n_phi > 0, "quadrature sizes must be positive"

    def nodes(self):
        """theta (T, P), phi (T, P) and weights (T, P) with sum(weights) = 4 pi."""
        x, w = np.polynomial.legendre.leggauss(self.n_theta)
        theta = np.arccos(x)
        phi = 2.0 * np.pi * np.arange(self.n_phi) / self.n_phi
        tt, pp = np.meshgrid(theta, phi, indexing="ij")
        weights = np.outer(w, np.full(self.n_phi, 2.0 * np.pi / self.n_phi))
        return tt, pp, weights

    def integrate(self, values):
        """Integral over the sphere of values sampled on `nodes`, (..., T, P) -> (...)."""
        _, _, weights = self.nodes()
        return np.sum(values * weights, axis=(-2, -1))

    def is_resolved(self):
        return self.n_theta >= MIN_QUADRATURE[0] and self.n_phi >= MIN_QUADRATURE[1]


def gram_matrix(s, modes, quadrature=None):
    """<sY_a, sY_b> over the sphere for the (l, m) pairs in `modes`."""
    quadrature = quadrature or SphereQuadrature()
    theta, phi, _ = quadrature.nodes()
    harmonics = np.stack([swsh(s, l, m, theta, phi) for l, m in modes])  # noqa: E741
    products = harmonics[:, None] * harmonics[None, :].conj()
    return quadrature.integrate(products)


def _sphere_points(r, t, theta, phi):
    pts = np.stack([
        np.full_like(theta, t),
        r * np.sin(theta) * np.cos(phi),
        r * np.sin(theta) * np.sin(phi),
        r * np.cos(theta),
    ], axis=-1)
    return torch.as_tensor(pts, dtype=torch.float64)


def extract_mode(strain, l, m, r, t, quadrature=None, s=-2, mass=1.0):  # noqa: E741
    """
    h^{lm}(t) = (r / M) * integral of h(t, r, theta, phi) conj(sY_lm) over the sphere.

    Args:
        strain (callable): complex strain on Cartesian events (..., 4), e.g. ComplexStrain.
        l, m (int): mode indices.
        r (float): extraction radius.
        t (float): coordinate time.
        quadrature (SphereQuadrature): angular grid, at least MIN_QUADRATURE.
        mass (float): mass scale of the radial normalisation.
    """
    _check_mode(s, l, m)
    quadrature = quadrature or SphereQuadrature()
    if not quadrature.is_resolved():
        raise DomainError("angular grid {}x{} is below the minimum {}x{}".format(
            quadrature.n_theta, quadrature.n_phi, *MIN_QUADRATURE))
    if mass <= 0:
        raise DomainError("mode normalisation needs a positive mass, got {}".format(mass))
    theta, phi, _ = quadrature.nodes()
    h = strain(_sphere_points(r, t, theta, phi))
    h = h.numpy() if isinstance(h, torch.Tensor) else np.asarray(h)
    return complex(r / mass * quadrature.integrate(h * swsh(s, l, m, theta, phi).conj()))


@dataclass
class ModeSeries:
    l: int  # noqa: E741
    m: int
    t: np.ndarray
    values: np.ndarray

    def to_csv(self, path, meta=None):
        rows = np.stack([self.t, self.values.real, self.values.imag], axis=1)
        info = {"l": self.l, "m": self.m}
        info.update(meta or {})
        return write_csv(path, ("t", "re_h", "im_h"), rows, info)


def mode_series(strain, l, m, r, times, quadrature=None, s=-2, mass=1.0):  # noqa: E741
    """h^{lm} at each coordinate time in `times`."""
    times = np.asarray(times, dtype=np.float64)
    values = np.array([
        extract_mode(strain, l, m, r, float(t), quadrature, s=s, mass=mass) for t in times
    ])
    return ModeSeries(l, m, times, values)

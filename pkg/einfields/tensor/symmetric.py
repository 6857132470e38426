#!/usr/bin/env python3
# -*- coding:utf-8 -*-

from dataclasses import dataclass

import torch

from einfields.utils.errors import SingularMetricError, SymmetryError

__all__ = [
    "PACKED_INDEX",
    "SymMetric",
    "sym_pack",
    "sym_unpack",
    "pack_symmetric",
    "unpack_symmetric",
    "det4",
    "inverse4",
    "check_invertible",
]

# (00,01,02,03,11,12,13,22,23,33)
PACKED_INDEX = tuple((i, j) for i in range(4) for j in range(i, 4))
_ROWS = torch.tensor([i for i, _ in PACKED_INDEX])
_COLS = torch.tensor([j for _, j in PACKED_INDEX])
# position in the packed vector of entry (i, j), for both triangles
_UNPACK = torch.tensor(
    [[PACKED_INDEX.index((min(i, j), max(i, j))) for j in range(4)] for i in range(4)]
)

SYMMETRY_TOL = 1e-12
ASYMMETRY_LIMIT = 1e-6
DET_TOL = 1e-12
COND_LIMIT = 1e12


def pack_symmetric(m):
    """(..., 4, 4) -> (..., 10) upper triangle in row-major order."""
    return m[..., _ROWS, _COLS]


def unpack_symmetric(packed):
    """(..., 10) -> (..., 4, 4)."""
    return packed[..., _UNPACK]


@dataclass(frozen=True)
class SymMetric:
    """Symmetric 4x4 tensor stored as its 10 independent entries.

    `packed` may carry leading batch dimensions. `asymmetry` records the largest
    |m_ij - m_ji| removed when the tensor was packed from a full matrix.
    """

    packed: torch.Tensor
    asymmetry: float = 0.0

    def __post_init__(self):
        assert self.packed.shape[-1] == 10, \
            "packed symmetric tensor needs 10 entries, got shape {}".format(
                tuple(self.packed.shape))

    @property
    def matrix(self):
        return unpack_symmetric(self.packed)

    def det(self):
        return det4(self.matrix)

    def inverse(self):
        check_invertible(self.matrix)
        return inverse4(self.matrix)

    def eigenvalues(self):
        return torch.linalg.eigvalsh(self.matrix)

    def is_lorentzian(self):
        """True where the signature is (-,+,+,+)."""
        eig = self.eigenvalues()
        return (eig[..., 0] < 0) & (eig[..., 1:] > 0).all(-1)

    def __add__(self, other):
        return SymMetric(self.packed + other.packed)

    def __sub__(self, other):
        return SymMetric(self.packed - other.packed)


def sym_pack(m, max_asymmetry=ASYMMETRY_LIMIT):
    """
    Pack a (..., 4, 4) matrix into a `SymMetric`.

    Inputs symmetric to 1e-12 are packed as is, small asymmetries are removed by
    symmetrization and recorded, anything above `max_asymmetry` raises `SymmetryError`.
    """
    m = torch.as_tensor(m, dtype=torch.float64)
    assert m.shape[-2:] == (4, 4), "expect (..., 4, 4) matrix, got {}".format(tuple(m.shape))
    asym = float((m - m.transpose(-1, -2)).abs().max()) if m.numel() else 0.0
    if asym > max_asymmetry:
        raise SymmetryError("matrix asymmetry {:.3e} exceeds {:.1e}".format(asym, max_asymmetry))
    if asym > SYMMETRY_TOL:
        m = 0.5 * (m + m.transpose(-1, -2))
    return SymMetric(pack_symmetric(m), asymmetry=asym)


def sym_unpack(s: SymMetric):
    return s.matrix


def _entries(m):
    return [[m[..., i, j] for j in range(4)] for i in range(4)]


def _minors(m):
    a = _entries(m)
    s = [
        a[0][0] * a[1][1] - a[1][0] * a[0][1],
        a[0][0] * a[1][2] - a[1][0] * a[0][2],
        a[0][0] * a[1][3] - a[1][0] * a[0][3],
        a[0][1] * a[1][2] - a[1][1] * a[0][2],
        a[0][1] * a[1][3] - a[1][1] * a[0][3],
        a[0][2] * a[1][3] - a[1][2] * a[0][3],
    ]
    c = [
        a[2][0] * a[3][1] - a[3][0] * a[2][1],
        a[2][0] * a[3][2] - a[3][0] * a[2][2],
        a[2][0] * a[3][3] - a[3][0] * a[2][3],
        a[2][1] * a[3][2] - a[3][1] * a[2][2],
        a[2][1] * a[3][3] - a[3][1] * a[2][3],
        a[2][2] * a[3][3] - a[3][2] * a[2][3],
    ]
    return a, s, c


def det4(m):
    """Closed-form determinant of (..., 4, 4)."""
    _, s, c = _minors(m)
    return s[0] * c[5] - s[1] * c[4] + s[2] * c[3] + s[3] * c[2] - s[4] * c[1] + s[5] * c[0]


def inverse4(m):
    """Closed-form cofactor inverse of (..., 4, 4); no pivoting, differentiable."""
    a, s, c = _minors(m)
    det = s[0] * c[5] - s[1] * c[4] + s[2] * c[3] + s[3] * c[2] - s[4] * c[1] + s[5] * c[0]
    b = [
        [
            a[1][1] * c[5] - a[1][2] * c[4] + a[1][3] * c[3],
            -a[0][1] * c[5] + a[0][2] * c[4] - a[0][3] * c[3],
            a[3][1] * s[5] - a[3][2] * s[4] + a[3][3] * s[3],
            -a[2][1] * s[5] + a[2][2] * s[4] - a[2][3] * s[3],
        ],
        [
            -a[1][0] * c[5] + a[1][2] * c[2] - a[1][3] * c[1],
            a[0][0] * c[5] - a[0][2] * c[2] + a[0][3] * c[1],
            -a[3][0] * s[5] + a[3][2] * s[2] - a[3][3] * s[1],
            a[2][0] * s[5] - a[2][2] * s[2] + a[2][3] * s[1],
        ],
        [
            a[1][0] * c[4] - a[1][1] * c[2] + a[1][3] * c[0],
            -a[0][0] * c[4] + a[0][1] * c[2] - a[0][3] * c[0],
            a[3][0] * s[4] - a[3][1] * s[2] + a[3][3] * s[0],
            -a[2][0] * s[4] + a[2][1] * s[2] - a[2][3] * s[0],
        ],
        [
            -a[1][0] * c[3] + a[1][1] * c[1] - a[1][2] * c[0],
            a[0][0] * c[3] - a[0][1] * c[1] + a[0][2] * c[0],
            -a[3][0] * s[3] + a[3][1] * s[1] - a[3][2] * s[0],
            a[2][0] * s[3] - a[2][1] * s[1] + a[2][2] * s[0],
        ],
    ]
    inv = torch.stack([torch.stack(row, dim=-1) for row in b], dim=-2)
    return inv / det[..., None, None]


def check_invertible(m, det_tol=DET_TOL, cond_limit=COND_LIMIT, where=None):
    """
    Raise `SingularMetricError` when |det m| < det_tol or the Frobenius condition
    estimate ||m|| * ||m^-1|| exceeds cond_limit anywhere in the batch.
    """
    m = torch.as_tensor(m)
    det = det4(m)
    bad = det.abs() < det_tol
    if not bool(bad.any()):
        inv = inverse4(m)
        cond = torch.linalg.matrix_norm(m) * torch.linalg.matrix_norm(inv)
        bad = ~torch.isfinite(cond) | (cond > cond_limit)
    if bool(bad.any()):
        idx = bad.reshape(-1).nonzero()[0].item()
        msg = "near-singular metric, det={:.3e}".format(float(det.reshape(-1)[idx]))
        if where is not None:
            msg += " at {}".format(where)
        raise SingularMetricError(msg)

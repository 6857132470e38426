#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import torch

__all__ = ["assemble", "minkowski_cartesian", "kerr_schild_form"]


def assemble(components, like):
    """
    Build a symmetric (..., 4, 4) tensor from a dict {(i, j): value}.

    Only one triangle needs to be given; missing entries are zero. `like` fixes the
    batch shape and dtype, values may be tensors or python floats.
    """
    zero = torch.zeros_like(like)
    rows = []
    for i in range(4):
        row = []
        for j in range(4):
            value = components.get((i, j), components.get((j, i), None))
            if value is None:
                value = zero
            elif not torch.is_tensor(value):
                value = zero + value
            row.append(value)
        rows.append(torch.stack(row, dim=-1))
    return torch.stack(rows, dim=-2)


def minkowski_cartesian(x, params=None):
    like = x[..., 0]
    return assemble({(0, 0): -1.0, (1, 1): 1.0, (2, 2): 1.0, (3, 3): 1.0}, like)


def kerr_schild_form(scale, ell):
    """scale * ell_a * ell_b for a null covector ell (..., 4)."""
    return scale[..., None, None] * ell[..., :, None] * ell[..., None, :]

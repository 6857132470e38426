#!/usr/bin/env python3
# -*- coding:utf-8 -*-

from dataclasses import dataclass

import torch

from .symmetric import SymMetric, check_invertible, inverse4

__all__ = ["DIM", "Tensor4", "contract", "trace", "raise_lower", "as_float64"]

DIM = 4


def as_float64(x):
    return torch.as_tensor(x, dtype=torch.float64)


@dataclass(frozen=True)
class Tensor4:
    """
    Dense rank-(rank_up, rank_down) tensor over 4 dimensions.

    `data` has shape (4,) * (rank_up + rank_down). Contravariant slots come first,
    covariant slots second, each group in declaration order.
    """

    rank_up: int
    rank_down: int
    data: torch.Tensor

    def __post_init__(self):
        assert self.rank_up >= 0 and self.rank_down >= 0, "ranks must be non-negative"
        data = as_float64(self.data)
        shape = (DIM,) * self.rank
        if tuple(data.shape) != shape:
            assert data.numel() == DIM ** self.rank, \
                "rank ({}, {}) needs {} entries, got {}".format(
                    self.rank_up, self.rank_down, DIM ** self.rank, data.numel())
            data = data.reshape(shape)
        object.__setattr__(self, "data", data)

    @property
    def rank(self):
        return self.rank_up + self.rank_down

    def is_up(self, slot):
        self._check_slot(slot)
        return slot < self.rank_up

    def _check_slot(self, slot):
        if not 0 <= slot < self.rank:
            raise IndexError("slot {} out of range for rank {}".format(slot, self.rank))

    def flat(self):
        return self.data.reshape(-1)

    def item(self):
        assert self.rank == 0, "only rank-0 tensors convert to a scalar"
        return float(self.data)

    def allclose(self, other, atol=1e-12, rtol=0.0):
        return (self.rank_up, self.rank_down) == (other.rank_up, other.rank_down) and \
            torch.allclose(self.data, other.data, atol=atol, rtol=rtol)

    def _same_kind(self, other):
        assert (self.rank_up, self.rank_down) == (other.rank_up, other.rank_down), \
            "rank mismatch ({}, {}) vs ({}, {})".format(
                self.rank_up, self.rank_down, other.rank_up, other.rank_down)

    def __add__(self, other):
        self._same_kind(other)
        return Tensor4(self.rank_up, self.rank_down, self.data + other.data)

    def __sub__(self, other):
        self._same_kind(other)
        return Tensor4(self.rank_up, self.rank_down, self.data - other.data)

    def __mul__(self, scalar):
        return Tensor4(self.rank_up, self.rank_down, self.data * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    @classmethod
    def scalar(cls, value):
        return cls(0, 0, as_float64(value).reshape(()))

    @classmethod
    def vector(cls, components):
        return cls(1, 0, components)

    @classmethod
    def covector(cls, components):
        return cls(0, 1, components)

    @classmethod
    def from_metric(cls, g: SymMetric):
        return cls(0, 2, g.matrix)


def contract(a: Tensor4, slot_a: int, b: Tensor4, slot_b: int) -> Tensor4:
    """
    Contract slot `slot_a` of `a` with slot `slot_b` of `b`.

    One slot must be contravariant and the other covariant. Remaining slots keep the
    contravariant-first order: ups of a, ups of b, downs of a, downs of b.
    """
    up_a, up_b = a.is_up(slot_a), b.is_up(slot_b)
    if up_a == up_b:
        raise ValueError("cannot contract two {} slots".format("upper" if up_a else "lower"))

    data = torch.tensordot(a.data, b.data, dims=([slot_a], [slot_b]))
    ua, da = a.rank_up - int(up_a), a.rank_down - int(not up_a)
    ub, db = b.rank_up - int(up_b), b.rank_down - int(not up_b)
    order = (
        list(range(ua))
        + list(range(ua + da, ua + da + ub))
        + list(range(ua, ua + da))
        + list(range(ua + da + ub, ua + da + ub + db))
    )
    return Tensor4(ua + ub, da + db, data.permute(order) if order else data)


def trace(t: Tensor4, slot_a: int, slot_b: int) -> Tensor4:
    """Contract two slots of opposite variance of the same tensor."""
    if slot_a == slot_b:
        raise ValueError("trace needs two distinct slots")
    if t.is_up(slot_a) == t.is_up(slot_b):
        raise ValueError("cannot trace two slots of the same variance")
    data = torch.diagonal(t.data, dim1=slot_a, dim2=slot_b).sum(-1)
    return Tensor4(t.rank_up - 1, t.rank_down - 1, data)


def raise_lower(t: Tensor4, slot: int, g: SymMetric, direction: str) -> Tensor4:
    """
    Flip the variance of one slot with the metric `g`.

    A lowered slot becomes the first covariant slot, a raised slot the last
    contravariant slot, so lowering the last upper slot and raising it back is exact.
    """
    assert direction in ("up", "down"), "direction must be 'up' or 'down'"
    is_up = t.is_up(slot)
    m = g.matrix
    check_invertible(m)
    if direction == "down":
        if not is_up:
            raise ValueError("slot {} is already covariant".format(slot))
        data = torch.tensordot(m, t.data, dims=([1], [slot]))
        return Tensor4(t.rank_up - 1, t.rank_down + 1, torch.movedim(data, 0, t.rank_up - 1))
    if is_up:
        raise ValueError("slot {} is already contravariant".format(slot))
    data = torch.tensordot(inverse4(m), t.data, dims=([1], [slot]))
    return Tensor4(t.rank_up + 1, t.rank_down - 1, torch.movedim(data, 0, t.rank_up))

#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# Copyright (c) Megvii, Inc. and its affiliates.

import torch
from torch.utils.data.sampler import Sampler

__all__ = ["EpochBatchSampler"]


class EpochBatchSampler(Sampler):
    """
    Each epoch draws a fresh uniform permutation of the dataset indices and splits it
    into `num_batches` nearly equal chunks. The permutation stream is seeded, so two
    samplers with the same seed yield identical batches.
    """

    def __init__(self, size: int, num_batches: int, seed: int = 0, shuffle: bool = True):
        """
        Args:
            size (int): number of samples.
            num_batches (int): batches per epoch, capped at `size`.
            seed (int): seed of the permutation stream.
        """
        assert size > 0, "cannot sample from an empty dataset"
        assert num_batches > 0, "need at least one batch per epoch"
        self._size = size
        self._num_batches = min(num_batches, size)
        self._shuffle = shuffle
        self._generator = torch.Generator()
        self._generator.manual_seed(int(seed))

    def __iter__(self):
        if self._shuffle:
            order = torch.randperm(self._size, generator=self._generator)
        else:
            order = torch.arange(self._size)
        yield from torch.tensor_split(order, self._num_batches)

    def __len__(self):
        return self._num_batches

    def state_dict(self):
        return {"generator": self._generator.get_state()}

    def load_state_dict(self, state):
        self._generator.set_state(state["generator"])

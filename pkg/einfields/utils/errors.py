#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# Copyright (c) Megvii Inc. All rights reserved.

__all__ = [
    "EinFieldsError",
    "DomainError",
    "SingularMetricError",
    "SymmetryError",
    "NonDifferentiablePointError",
    "NonFiniteError",
    "ConfigError",
    "CheckpointError",
    "IntegrationError",
]


class EinFieldsError(Exception):
    """Base class of every error raised by einfields."""


class DomainError(EinFieldsError, ValueError):
    """A point lies outside the validity domain of a chart or provider."""


class SingularMetricError(EinFieldsError, ValueError):
    """Metric determinant or condition estimate is out of the accepted range."""


class SymmetryError(EinFieldsError, ValueError):
    pass


class NonDifferentiablePointError(EinFieldsError, ValueError):
    """A jet produced non-finite entries."""


class NonFiniteError(EinFieldsError, FloatingPointError):
    pass


class ConfigError(EinFieldsError, ValueError):
    pass


class CheckpointError(EinFieldsError, IOError):
    pass


class IntegrationError(EinFieldsError, RuntimeError):
    """Step-size underflow or failure inside an ODE integration."""

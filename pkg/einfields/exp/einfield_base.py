#!/usr/bin/env python3
# Copyright (c) Megvii Inc. All rights reserved.

import math
import os

import torch

from einfields.utils import ConfigError, DomainError

from .base_exp import BaseExp

__all__ = ["Exp", "check_exp_value"]


class Exp(BaseExp):
    def __init__(self):
        super().__init__()

        # ---------------- geometry config ---------------- #
        # chart of the training data, one of the ChartId values
        self.chart = "SchwarzschildSpherical"
        # mass and spin per unit mass, geometric units
        self.M = 1.0
        self.a = 0.0
        # gravitational-wave strain amplitudes and angular frequency
        self.h_plus = 0.0
        self.h_cross = 0.0
        self.omega = 1.0
        # -h_plus on the yy strain entry instead of +h_plus
        self.standard_tt = False
        # spherical-like charts exclude r < r_plus + horizon_margin
        self.horizon_margin = 0.5

        # ---------------- grid config ---------------- #
        # (lo, hi, count) per coordinate axis
        self.grid_axes = (
            (0.0, 0.0, 1),
            (2.5, 150.0, 128),
            (0.0, math.pi, 128),
            (0.0, 2.0 * math.pi, 128),
        )
        # (open_lo, open_hi) per axis; open ends drop the boundary node
        self.grid_open = ((False, False), (False, False), (True, True), (False, True))
        # held-out points: "staggered" mid-cell grid or the "training" grid itself
        self.eval_grid = "staggered"
        # evenly thinned to at most this many held-out points
        self.eval_max_points = 20000
        self.eval_quantities = ("metric", "christoffel")

        # ---------------- model config ---------------- #
        # number of width x width layers after the input layer
        self.depth = 3
        self.width = 64
        # activation name: silu, sine or gabor
        self.act = "silu"
        self.zeta0 = 30.0
        self.s0 = 10.0
        # packed10 (symmetric by construction) or full16
        self.output_mode = "packed10"
        # "distortion" learns g - background, "metric" learns g itself
        self.target = "distortion"

        # --------------  training config --------------------- #
        # highest supervised input derivative: 0 values, 1 +Jacobian, 2 +Hessian
        self.sobolev_order = 2
        # fixed loss weights (value, jac, hess) when gradnorm is off
        self.lambdas = (1.0, 1.0, 1.0)
        # rescale each loss gradient to unit norm before summation
        self.gradnorm = False
        # half-life in iterations of the EMA over GradNorm weights, 0 disables it
        self.gradnorm_half_life = 0.0
        # adam or soap
        self.optimizer = "soap"
        self.betas = (0.95, 0.95)
        self.precondition_frequency = 1
        self.max_epoch = 100
        self.num_batches = 100
        # name of LRScheduler: cos or constant
        self.scheduler = "cos"
        self.basic_lr = 1e-2
        self.final_lr = 1e-5
        self.decay_steps = 10000
        # weight of the vacuum Ricci penalty, 0 disables it
        self.ricci_penalty = 0.0
        # record cosine similarity between the value-loss gradient and the others
        self.track_alignment = False
        # log period in iter
        self.print_interval = 10
        # eval period in epoch
        self.eval_interval = 10
        # save history checkpoint or not.
        # If set to False, only latest and best ckpt are kept.
        self.save_history_ckpt = False
        # name of experiment
        self.exp_name = os.path.split(os.path.realpath(__file__))[1].split(".")[0]

        # ---------------- geodesic config ---------------- #
        # RK45, DOP853 or Radau
        self.integrator = "RK45"
        self.rtol = 1e-10
        self.atol = 1e-12
        self.tau_end = 1000.0
        # Schwarzschild launch: r0 = orbit_a0 * r_s, tangential speed factor orbit_b0
        # (None selects the circular value)
        self.orbit_a0 = 3.85
        self.orbit_b0 = None
        self.orbit_phi0 = 0.0
        # Kerr equatorial orbits as (name, E, L_z, r0)
        self.kerr_orbits = ()
        # samples of the common proper-time grid of rollout comparisons
        self.deviation_samples = 2000

        # ---------------- gw config ---------------- #
        # test-particle ring radius and number of particles
        self.ring_radius = 1.0
        self.ring_points = 16
        # "minus": h = h_plus - i h_cross, "plus": h = h_plus + i h_cross
        self.strain_convention = "minus"
        # Gauss-Legendre nodes in cos(theta) x trapezoid nodes in phi
        self.quad_theta = 64
        self.quad_phi = 128
        self.mode_l = 2
        self.mode_m = 2
        self.extraction_radius = 10.0
        # (lo, hi, count) of the (z, t) sampling of psi4
        self.psi4_z = (0.0, 10.0, 50)
        self.psi4_t = (0.0, 10.0, 50)

        # -----------------  baseline config ------------------ #
        self.fd_orders = (4, 6)
        self.fd_steps = (1e-1, 5e-2, 2e-2, 1e-2, 5e-3, 2e-3, 1e-3, 5e-4, 2e-4, 1e-4)
        self.fd_points = 100

    # ---------------- builders ---------------- #
    def get_chart(self):
        from einfields.metrics import ChartId

        return ChartId.parse(self.chart)

    def get_params(self):
        from einfields.metrics import MetricParams

        return MetricParams(
            M=self.M,
            a=self.a,
            h_plus=self.h_plus,
            h_cross=self.h_cross,
            omega=self.omega,
            standard_tt=self.standard_tt,
            horizon_margin=self.horizon_margin,
        )

    def get_grid(self):
        from einfields.data import AxisSpec, GridSpec

        axes = []
        for (lo, hi, count), (open_lo, open_hi) in zip(self.grid_axes, self.grid_open):
            axes.append(AxisSpec(float(lo), float(hi), int(count), not open_lo, not open_hi))
        return GridSpec(tuple(axes))

    def get_box(self):
        """Input normalization box; degenerate axes are widened to unit half-width."""
        grid = self.get_grid()
        lower, upper = grid.lower.clone(), grid.upper.clone()
        flat = upper <= lower
        lower[flat] -= 1.0
        upper[flat] += 1.0
        return lower, upper

    def get_analytic_field(self, kind="metric"):
        from einfields.metrics import AnalyticMetric

        return AnalyticMetric(self.get_chart(), self.get_params(), kind)

    def get_model(self, seed=None):
        from einfields.models import EinField

        lower, upper = self.get_box()
        return EinField(
            depth=self.depth,
            width=self.width,
            act=self.act,
            output_mode=self.output_mode,
            target=self.target,
            chart=self.get_chart(),
            params=self.get_params(),
            lower=lower,
            upper=upper,
            zeta0=self.zeta0,
            s0=self.s0,
            seed=self.seed if seed is None else seed,
        )

    def get_dataset(self, progress=True):
        from einfields.data import generate_dataset

        return generate_dataset(
            self.get_chart(),
            self.get_params(),
            self.get_grid(),
            order=self.sobolev_order,
            target=self.target,
            progress=progress,
        )

    def get_loss(self):
        from einfields.models import SobolevLoss

        return SobolevLoss(order=self.sobolev_order)

    def get_optimizer(self, model):
        from einfields.optim import build_optimizer

        return build_optimizer(
            self.optimizer,
            model.parameters(),
            lr=self.basic_lr,
            betas=self.betas,
            precondition_frequency=self.precondition_frequency,
        )

    def get_lr_scheduler(self):
        from einfields.utils import LRScheduler

        return LRScheduler(self.scheduler, self.basic_lr, self.decay_steps, self.final_lr)

    def get_eval_points(self):
        grid = self.get_grid()
        points = grid.staggered().points() if self.eval_grid == "staggered" else grid.points()
        if len(points) > self.eval_max_points:
            idx = torch.linspace(0, len(points) - 1, self.eval_max_points).round().long()
            points = points[idx]
        return points

    def get_evaluator(self, progress=False):
        from einfields.evaluators import FieldEvaluator

        return FieldEvaluator(
            self.get_chart(),
            self.get_params(),
            self.get_eval_points(),
            quantities=self.eval_quantities,
            progress=progress,
        )

    def get_trainer(self, args):
        from einfields.core import Trainer

        trainer = Trainer(self, args)
        # NOTE: trainer shouldn't be an attribute of exp object
        return trainer

    def eval(self, model, evaluator):
        return evaluator.evaluate(model)


def _require(cond, msg):
    if not cond:
        raise ConfigError(msg)


def check_exp_value(exp: Exp):
    """Validate an experiment before any compute; raises `ConfigError`."""
    from einfields.evaluators import QUANTITIES
    from einfields.metrics import ChartId

    try:
        ChartId.parse(exp.chart)
        exp.get_params()
        exp.get_grid()
    except (ValueError, DomainError) as e:
        raise ConfigError(str(e))

    _require(len(exp.grid_axes) == 4 and len(exp.grid_open) == 4,
             "grid_axes and grid_open need one entry per coordinate")
    _require(exp.eval_grid in ("staggered", "training"), "eval_grid must be staggered or training")
    _require(exp.eval_max_points >= 1, "eval_max_points must be positive")
    _require(all(q in QUANTITIES for q in exp.eval_quantities),
             "eval_quantities must be taken from {}".format(QUANTITIES))

    _require(exp.depth >= 0 and exp.width >= 1, "need depth >= 0 and width >= 1")
    _require(exp.act in ("silu", "sine", "gabor"), "unknown activation {}".format(exp.act))
    _require(exp.output_mode in ("packed10", "full16"), "unknown output_mode")
    _require(exp.target in ("distortion", "metric"), "unknown target {}".format(exp.target))

    _require(exp.sobolev_order in (0, 1, 2), "sobolev_order must be 0, 1 or 2")
    _require(len(exp.lambdas) == 3 and all(lam >= 0 for lam in exp.lambdas),
             "lambdas needs three non-negative weights")
    _require(any(lam > 0 for lam in exp.lambdas[:exp.sobolev_order + 1]) or exp.gradnorm,
             "every active loss weight is zero")
    _require(exp.gradnorm_half_life >= 0, "gradnorm_half_life must be non-negative")
    _require(exp.optimizer in ("adam", "soap"), "optimizer must be adam or soap")
    _require(len(exp.betas) == 2 and all(0 <= b < 1 for b in exp.betas), "betas must lie in [0, 1)")
    _require(exp.precondition_frequency >= 1, "precondition_frequency must be >= 1")
    _require(exp.max_epoch >= 1 and exp.num_batches >= 1, "need max_epoch, num_batches >= 1")
    _require(exp.scheduler in ("cos", "constant"), "scheduler must be cos or constant")
    _require(exp.basic_lr > 0 and exp.final_lr > 0, "learning rates must be positive")
    _require(exp.decay_steps > 0, "decay_steps must be positive")
    _require(exp.ricci_penalty >= 0, "ricci_penalty must be non-negative")
    _require(exp.print_interval >= 1 and exp.eval_interval >= 1, "intervals must be >= 1")

    _require(exp.integrator in ("RK45", "DOP853", "Radau"), "unknown integrator {}".format(
        exp.integrator))
    for name in ("rtol", "atol"):
        tol = getattr(exp, name)
        _require(1e-14 <= tol <= 1e-3, "{} must lie in [1e-14, 1e-3], got {}".format(name, tol))
    _require(exp.tau_end > 0, "tau_end must be positive")
    _require(exp.deviation_samples >= 2, "deviation_samples must be >= 2")

    _require(exp.strain_convention in ("minus", "plus"), "strain_convention must be minus or plus")
    _require(exp.quad_theta >= 32 and exp.quad_phi >= 64,
             "angular quadrature must be at least 32 x 64")
    _require(exp.mode_l >= 2 and abs(exp.mode_m) <= exp.mode_l, "need l >= 2 and |m| <= l")
    _require(exp.ring_points >= 1 and exp.ring_radius > 0, "ring needs points and a radius")
    _require(all(o in (4, 6) for o in exp.fd_orders), "fd_orders must be 4 or 6")
    _require(all(h > 0 for h in exp.fd_steps), "fd_steps must be positive")

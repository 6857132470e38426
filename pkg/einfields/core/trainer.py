#!/usr/bin/env python3
# Copyright (c) Megvii, Inc. and its affiliates.

import argparse
import datetime
import math
import os
import time
from loguru import logger

import torch
from torch.utils.tensorboard import SummaryWriter

from einfields.data import EpochBatchSampler
from einfields.models import LOSS_NAMES, SobolevLoss, packed_jets
from einfields.utils import (
    ConfigError,
    MeterBuffer,
    NonFiniteError,
    load_ckpt,
    mem_usage,
    save_checkpoint,
    save_einfield,
    setup_logger,
    storage_report
)

from .report import TrainReport
from .steps import (
    combine_grads,
    component_grads,
    cosine_alignment,
    ema_decay,
    gradnorm_weights,
    optimizer_step,
    ricci_residual
)

__all__ = ["Trainer", "train", "default_train_args"]


def default_train_args(exp, **kwargs):
    args = argparse.Namespace(
        experiment_name=exp.exp_name,
        resume=False,
        ckpt=None,
        start_epoch=None,
        logger="tensorboard",
    )
    for k, v in kwargs.items():
        setattr(args, k, v)
    return args


class Trainer:
    def __init__(self, exp, args, dataset=None, model=None):
        # init function only defines some basic attr, other attrs like model, optimizer are built in
        # before_train methods.
        self.exp = exp
        self.args = args
        self.dataset = dataset
        self.model = model

        # training related attr
        self.max_epoch = exp.max_epoch
        self.save_history_ckpt = exp.save_history_ckpt
        self.lambdas = tuple(exp.lambdas)
        self.gradnorm = exp.gradnorm
        self.gradnorm_decay = ema_decay(exp.gradnorm_half_life)
        self.best_mae = math.inf
        self.report = TrainReport()
        self.epoch = 0
        self.iter = 0

        # metric record
        self.meter = MeterBuffer(window_size=exp.print_interval)
        self.file_name = os.path.join(exp.output_dir, args.experiment_name)
        os.makedirs(self.file_name, exist_ok=True)

        setup_logger(self.file_name, filename="train_log.txt", mode="a", redirect=False)

    def train(self):
        self.before_train()
        try:
            self.train_in_epoch()
        except Exception:
            raise
        finally:
            self.after_train()
        return self.model, self.report

    def train_in_epoch(self):
        for self.epoch in range(self.start_epoch, self.max_epoch):
            self.before_epoch()
            self.train_in_iter()
            self.after_epoch()

    def train_in_iter(self):
        for self.iter in range(self.max_iter):
            self.before_iter()
            self.train_one_iter()
            self.after_iter()

    def train_one_iter(self):
        iter_start_time = time.time()

        idx = next(self.batches)
        inps, targets = self.dataset.batch(idx)
        data_end_time = time.time()

        lr = self.lr_scheduler.update_lr(self.progress_in_iter)
        preds = packed_jets(self.model, inps, self.loss_fn.order)
        components = self.loss_fn(preds, targets)
        outputs = dict(zip(LOSS_NAMES, components))
        if self.exp.ricci_penalty > 0:
            outputs["loss_ricci"] = ricci_residual(self.model, inps)

        total = SobolevLoss.combine(components, self.lambdas)
        if "loss_ricci" in outputs:
            total = total + self.exp.ricci_penalty * outputs["loss_ricci"]
        if not torch.isfinite(total):
            self.abort_non_finite(float(total))

        self.optimizer.zero_grad()
        if self.gradnorm or (self.exp.track_alignment and len(components) > 1):
            params = [p for p in self.model.parameters() if p.requires_grad]
            grads = component_grads(components, params)
            if self.exp.track_alignment and len(components) > 1:
                cos = cosine_alignment(grads) + [math.nan] * (3 - len(components))
                self.report.alignment.append((self.progress_in_iter, cos[0], cos[1]))
        if self.gradnorm:
            weights, flagged = gradnorm_weights(grads, self._gradnorm_prev, self.gradnorm_decay)
            self._gradnorm_prev = weights
            self.report.gradnorm_flags += int(flagged)
            if "loss_ricci" in outputs:
                grads = grads + component_grads([outputs["loss_ricci"]], params)
                weights = weights + [self.exp.ricci_penalty]
            combine_grads(grads, weights, params)
        else:
            total.backward()

        if optimizer_step(self.optimizer, lr):
            self._last_good = {k: v.detach().clone() for k, v in self.model.state_dict().items()}
        else:
            self.report.rejected_steps += 1

        loss_value = float(total.detach())
        self.report.loss_trace.append(loss_value)
        for k, v in outputs.items():
            self._epoch_sums[k] = self._epoch_sums.get(k, 0.0) + float(v.detach())

        iter_end_time = time.time()
        self.meter.update(
            iter_time=iter_end_time - iter_start_time,
            data_time=data_end_time - iter_start_time,
            lr=lr,
            total_loss=loss_value,
            **outputs,
        )

    def before_train(self):
        logger.info("args: {}".format(self.args))
        logger.info("exp value:\n{}".format(self.exp))
        torch.manual_seed(self.exp.seed)

        # data related init
        if self.dataset is None:
            self.dataset = self.exp.get_dataset()
        if self.dataset.order < self.exp.sobolev_order:
            raise ConfigError("dataset has derivative order {} but sobolev_order is {}".format(
                self.dataset.order, self.exp.sobolev_order))

        # model related init
        model = self.model if self.model is not None else self.exp.get_model()
        if model.target != self.dataset.target:
            raise ConfigError("model target {} does not match dataset target {}".format(
                model.target, self.dataset.target))
        logger.info("Model Summary: {}".format(storage_report(model)))

        # solver related init
        self.optimizer = self.exp.get_optimizer(model)
        self.loss_fn = SobolevLoss(order=self.exp.sobolev_order)
        self.sampler = EpochBatchSampler(
            len(self.dataset), self.exp.num_batches, seed=self.exp.seed)
        # max_iter means iters per epoch
        self.max_iter = len(self.sampler)

        # value of epoch will be set in `resume_train`
        model = self.resume_train(model)
        self.model = model
        self.lr_scheduler = self.exp.get_lr_scheduler()
        self._gradnorm_prev = None
        self._last_good = {k: v.detach().clone() for k, v in model.state_dict().items()}

        self.evaluator = self.exp.get_evaluator()
        self.tblogger = None
        if self.args.logger == "tensorboard":
            self.tblogger = SummaryWriter(os.path.join(self.file_name, "tensorboard"))
        elif self.args.logger != "none":
            raise ValueError("logger must be either 'tensorboard' or 'none'")

        self.start_time = time.time()
        logger.info("Training start...")
        logger.info("\n{}".format(model))

    def after_train(self):
        logger.info(
            "Training of experiment is done and the best metric MAE is {:.3e}".format(self.best_mae)
        )
        self.report.best_mae = self.best_mae
        if getattr(self, "model", None) is not None and self.report.rows:
            self.report.to_csv(os.path.join(self.file_name, "train_report.csv"), self.run_meta())
            if self.report.alignment:
                self.report.alignment_csv(
                    os.path.join(self.file_name, "alignment.csv"), self.run_meta())
            save_einfield(self.model, os.path.join(self.file_name, "einfield.einf"),
                          self.run_meta())
        if getattr(self, "tblogger", None) is not None:
            self.tblogger.close()

    def before_epoch(self):
        logger.info("---> start train epoch{}".format(self.epoch + 1))
        self.batches = iter(self.sampler)
        self._epoch_sums = {}

    def after_epoch(self):
        losses = {k: v / self.max_iter for k, v in self._epoch_sums.items()}
        self.report.add_epoch(
            self.epoch + 1, losses, self.meter["lr"].latest, time.time() - self.start_time)
        if self.tblogger is not None:
            for k, v in losses.items():
                self.tblogger.add_scalar("epoch/{}".format(k), v, self.epoch + 1)

        self.save_ckpt(ckpt_name="latest")
        if (self.epoch + 1) % self.exp.eval_interval == 0 or self.epoch + 1 == self.max_epoch:
            self.evaluate_and_save_model()

    def before_iter(self):
        pass

    def after_iter(self):
        # log needed information
        if (self.iter + 1) % self.exp.print_interval == 0:
            left_iters = self.max_iter * self.max_epoch - (self.progress_in_iter + 1)
            eta_seconds = self.meter["iter_time"].global_avg * left_iters
            eta_str = "ETA: {}".format(datetime.timedelta(seconds=int(eta_seconds)))

            progress_str = "epoch: {}/{}, iter: {}/{}".format(
                self.epoch + 1, self.max_epoch, self.iter + 1, self.max_iter
            )
            loss_meter = self.meter.get_filtered_meter("loss")
            loss_str = ", ".join(
                ["{}: {:.3e}".format(k, v.latest) for k, v in loss_meter.items()]
            )

            time_meter = self.meter.get_filtered_meter("time")
            time_str = ", ".join(
                ["{}: {:.3f}s".format(k, v.avg) for k, v in time_meter.items()]
            )

            mem_str = "mem: {:.0f}Mb".format(mem_usage())

            logger.info(
                "{}, {}, {}, {}, lr: {:.3e}, {}".format(
                    progress_str,
                    mem_str,
                    time_str,
                    loss_str,
                    self.meter["lr"].latest,
                    eta_str,
                )
            )

            if self.tblogger is not None:
                self.tblogger.add_scalar("train/lr", self.meter["lr"].latest, self.progress_in_iter)
                for k, v in loss_meter.items():
                    self.tblogger.add_scalar(f"train/{k}", v.latest, self.progress_in_iter)

            self.meter.clear_meters()

    @property
    def progress_in_iter(self):
        return self.epoch * self.max_iter + self.iter

    def run_meta(self):
        return {
            "exp_name": self.exp.exp_name,
            "chart": self.dataset.chart.value if self.dataset is not None else self.exp.chart,
            "seed": self.exp.seed,
            "epochs": len(self.report.rows),
            "best_mae": self.best_mae if math.isfinite(self.best_mae) else None,
        }

    def resume_train(self, model):
        if self.args.resume:
            logger.info("resume training")
            if self.args.ckpt is None:
                ckpt_file = os.path.join(self.file_name, "latest" + "_ckpt.pth")
            else:
                ckpt_file = self.args.ckpt

            ckpt = torch.load(ckpt_file, map_location="cpu", weights_only=False)
            # resume the model/optimizer/sampler state dict
            model.load_state_dict(ckpt["model"])
            self.optimizer.load_state_dict(ckpt["optimizer"])
            self.sampler.load_state_dict(ckpt["sampler"])
            self.report.load_state_dict(ckpt["report"])
            self.best_mae = ckpt.pop("best_mae", math.inf)
            # resume the training states variables
            start_epoch = (
                self.args.start_epoch - 1
                if self.args.start_epoch is not None
                else ckpt["start_epoch"]
            )
            self.start_epoch = start_epoch
            logger.info(
                "loaded checkpoint '{}' (epoch {})".format(ckpt_file, self.start_epoch)
            )
        else:
            if self.args.ckpt is not None:
                logger.info("loading checkpoint for fine tuning")
                ckpt = torch.load(self.args.ckpt, map_location="cpu", weights_only=False)["model"]
                model = load_ckpt(model, ckpt)
            self.start_epoch = 0

        return model

    def abort_non_finite(self, value):
        """Restore the last parameters that gave a finite step and stop training."""
        self.model.load_state_dict(self._last_good)
        path = os.path.join(self.file_name, "last_good.einf")
        save_einfield(self.model, path, self.run_meta())
        raise NonFiniteError(
            "non-finite loss {} at epoch {}, iter {}; last good model saved to {}".format(
                value, self.epoch + 1, self.iter + 1, path)
        )

    def evaluate_and_save_model(self):
        mae, reports, summary = self.exp.eval(self.model, self.evaluator)
        self.report.eval_reports = reports

        update_best_ckpt = mae < self.best_mae
        self.best_mae = min(self.best_mae, mae)

        if self.tblogger is not None:
            for r in reports:
                self.tblogger.add_scalar("val/{}_mae".format(r.quantity), r.mae, self.epoch + 1)
                self.tblogger.add_scalar(
                    "val/{}_rel_l2".format(r.quantity), r.rel_l2, self.epoch + 1)
        logger.info("\n" + summary)

        self.save_ckpt("last_epoch", update_best_ckpt, mae=mae)
        if update_best_ckpt:
            save_einfield(self.model, os.path.join(self.file_name, "best.einf"), self.run_meta())
        if self.save_history_ckpt:
            self.save_ckpt(f"epoch_{self.epoch + 1}", mae=mae)

    def save_ckpt(self, ckpt_name, update_best_ckpt=False, mae=None):
        logger.info("Save weights to {}".format(self.file_name))
        ckpt_state = {
            "start_epoch": self.epoch + 1,
            "model": self.model.state_dict(),
            "optimizer": self.optimizer.state_dict(),
            "sampler": self.sampler.state_dict(),
            "report": self.report.state_dict(),
            "best_mae": self.best_mae,
            "curr_mae": mae,
        }
        save_checkpoint(
            ckpt_state,
            update_best_ckpt,
            self.file_name,
            ckpt_name,
        )


def train(exp, dataset=None, model=None, args=None):
    """
    Run the training loop of `exp` on `dataset` (generated from `exp` when None).

    Return:
        (EinField, TrainReport)
    """
    trainer = Trainer(exp, args or default_train_args(exp), dataset=dataset, model=model)
    return trainer.train()

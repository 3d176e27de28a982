#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# ======================================================================================================================== #
# Project  : DeepE Knowledge Graph Embedding                                                                               #
# Version  : 0.1.0                                                                                                         #
# File     : \gradcheck.py                                                                                                 #
# Language : Python 3.8.12                                                                                                 #
# ------------------------------------------------------------------------------------------------------------------------ #
# Author   : John James                                                                                                    #
# Company  : nov8.ai                                                                                                       #
# Email    : john.james.sf@gmail.com                                                                                       #
# URL      : https://github.com/john-james-sf/deepe                                                                        #
# ------------------------------------------------------------------------------------------------------------------------ #
# Created  : Tuesday, September 29th 2026, 4:33:00 am                                                                      #
# Modified : Tuesday, October 6th 2026, 2:28:00 am                                                                         #
# Modifier : John James (john.james.sf@gmail.com)                                                                          #
# ------------------------------------------------------------------------------------------------------------------------ #
# License  : BSD 3-clause "New" or "Revised" License                                                                       #
# Copyright: (c) 2026 nov8.ai                                                                                              #
# ======================================================================================================================== #

"""Central finite-difference checks of every hand-written backward pass."""
import logging
from typing import Callable, Dict, List

import numpy as np
import pandas as pd

from deepe.models.layers import (BatchNormLayer, DeepEBlock, DropoutLayer, LinearLayer, Mode, Module,
                                 ResidualBlock, ResNetBlock)
from deepe.models.model import DeepEModel, DropoutSpec, ModelConfig
from deepe.models.numkernel import Rng, relu_backward, relu_forward, resolve_dtype
from deepe.models.train_model import binary_cross_entropy_loss, cross_entropy_loss
from deepe.utils.exceptions import GradientCheckError
# ------------------------------------------------------------------------------------------------------------------------ #
logger = logging.getLogger(__name__)
# ------------------------------------------------------------------------------------------------------------------------ #
THRESHOLD = 1e-5
# precision -> (finite-difference step, tolerance)
SETTINGS = {64: (1e-5, THRESHOLD), 32: (1e-3, 1e-2)}
REPORT_COLUMNS = ["check", "parameter", "size", "max_abs_error", "rel_error", "tolerance", "passed"]
# ReLU inputs within this distance of zero are kept out of the check.
KINK_MARGIN = 1e-4
KINK_RETRIES = 5


def relu_margin(module: Module) -> float:
    """Smallest |input| of any ReLU in the cached forward pass of ``module`` and its children."""
    margin = np.inf
    if isinstance(module, ResidualBlock) and module.activation == "relu" and module._cache is not None:
        _, pre_acts, pre_sum = module._cache
        inputs = list(pre_acts) + ([pre_sum] if module.final_activation else [])
        for values in inputs:
            if values.size:
                margin = min(margin, float(np.abs(values).min()))
    for _, child in module.named_children():
        margin = min(margin, relu_margin(child))
    return margin


def relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    """max|a - n| / max(max|a|, max|n|, 1e-4)."""
    analytic = np.asarray(analytic, dtype=np.float64)
    numeric = np.asarray(numeric, dtype=np.float64)
    scale = max(float(np.abs(analytic).max(initial=0)), float(np.abs(numeric).max(initial=0)), 1e-4)
    return float(np.abs(analytic - numeric).max(initial=0)) / scale


def numeric_gradient(loss_fn: Callable[[], float], array: np.ndarray, step: float) -> np.ndarray:
    """Central differences of ``loss_fn`` with respect to every entry of ``array``, perturbed in place."""
    grad = np.zeros(array.shape, dtype=np.float64)
    flat = array.reshape(-1)
    for i in range(flat.size):
        original = flat[i]
        flat[i] = original + step
        plus = loss_fn()
        flat[i] = original - step
        minus = loss_fn()
        flat[i] = original
        grad.flat[i] = (plus - minus) / (2 * step)
    return grad


def _rng_states(module: Module) -> Dict[str, dict]:
    return {name: rng.get_state() for name, rng in module.named_rngs()}


def _restore_rngs(module: Module, states: Dict[str, dict]) -> None:
    for name, rng in module.named_rngs():
        rng.set_state(states[name])


class GradientChecker:
    """Runs checks and collects one report row per parameter group.

    Arguments:
        precision: 64 for meaningful tolerances; 32 is accepted with a looser tolerance.
        perturb_backward: Scales every analytic gradient by 1.01, a negative control.
        seed: Seed of inputs and initial weights.
    """

    def __init__(self, precision: int = 64, perturb_backward: bool = False, seed: int = 0) -> None:
        self.precision = int(precision)
        self.dtype = resolve_dtype(self.precision)
        self.step, self.tolerance = SETTINGS[self.precision]
        if self.precision == 32:
            logger.warning("Finite differences at 32-bit are not meaningful; using step {} and tolerance {}.".format(
                self.step, self.tolerance))
        self.scale = 1.01 if perturb_backward else 1.0
        self.rng = Rng(seed)
        self.rows: List[dict] = []
        self.draws = 0

    def _record(self, check: str, parameter: str, analytic: np.ndarray, numeric: np.ndarray) -> None:
        error = relative_error(analytic, numeric)
        self.rows.append({"check": check, "parameter": parameter, "size": int(np.size(analytic)),
                          "max_abs_error": float(np.abs(np.asarray(analytic, np.float64) - numeric).max(initial=0)),
                          "rel_error": error, "tolerance": self.tolerance, "passed": bool(error < self.tolerance)})

    def _draw(self, *shape: int) -> np.ndarray:
        self.draws += 1
        return self.rng.split(1000 + self.draws).normal(1.0, shape, dtype=self.dtype)

    def _shift_affine(self, module: Module, rng: Rng) -> None:
        """Random biases, BN shifts and running statistics, so a frozen block is not centred on the kink."""
        for i, (name, param, _) in enumerate(module.named_parameters()):
            if name.endswith(("bias", "beta")):
                param[:] = rng.split(i).normal(0.5, param.shape, dtype=self.dtype)
        for i, (name, buffer) in enumerate(module.named_buffers()):
            draw = rng.split(100 + i).normal(0.5, buffer.shape, dtype=self.dtype)
            buffer[:] = np.abs(draw) + self.dtype.type(0.5) if name.endswith("running_var") else draw

    # -------------------------------------------------------------------------------------------------------------------- #
    def check_layer(self, check: str, layer: Module, x: np.ndarray, mode: Mode = Mode.TRAIN) -> None:
        """Checks input and parameter gradients of L = sum(forward(x) * R) for a fixed random R."""
        layer.set_mode(mode)
        states = _rng_states(layer)
        for attempt in range(KINK_RETRIES):
            _restore_rngs(layer, states)
            out = layer.forward(x, mode)
            if relu_margin(layer) >= KINK_MARGIN:
                break
            logger.debug("{}: ReLU input within {} of zero, redrawing the input (attempt {}).".format(
                check, KINK_MARGIN, attempt + 1))
            x = self._draw(*x.shape)
        else:
            logger.warning("{}: ReLU inputs stay within {} of zero after {} draws.".format(
                check, KINK_MARGIN, KINK_RETRIES))
        upstream = self._draw(*out.shape)

        def loss() -> float:
            _restore_rngs(layer, states)
            return float((layer.forward(x, mode, cache=False).astype(np.float64) * upstream).sum())

        layer.flush_gradients()
        _restore_rngs(layer, states)
        layer.forward(x, mode)
        dx = layer.backward(upstream) * self.scale
        self._record(check, "input", dx, numeric_gradient(loss, x, self.step))
        for name, param, grad in list(layer.named_parameters()):
            analytic = grad.copy() * self.scale
            self._record(check, name, analytic, numeric_gradient(loss, param, self.step))

    def check_relu(self) -> None:
        x = self._draw(4, 5)
        x = x + np.sign(x) * self.dtype.type(0.05)
        upstream = self._draw(4, 5)

        def loss() -> float:
            return float((relu_forward(x).astype(np.float64) * upstream).sum())

        self._record("relu", "input", relu_backward(x, upstream) * self.scale, numeric_gradient(loss, x, self.step))

    def check_losses(self) -> None:
        scores = self._draw(3, 5)
        gold = np.array([0, 3, 4])
        for smoothing in (0.0, 0.1):
            _, d_scores = cross_entropy_loss(scores, gold, smoothing)
            numeric = numeric_gradient(lambda: cross_entropy_loss(scores, gold, smoothing)[0], scores, self.step)
            self._record("cross_entropy", "scores(smoothing={})".format(smoothing), d_scores * self.scale, numeric)
        targets = (self._draw(3, 5) > 0.5).astype(self.dtype)
        _, d_scores = binary_cross_entropy_loss(scores, targets)
        numeric = numeric_gradient(lambda: binary_cross_entropy_loss(scores, targets)[0], scores, self.step)
        self._record("binary_cross_entropy", "scores", d_scores * self.scale, numeric)

    def check_model(self, dim: int = 8, deepe_blocks: int = 2, resnet_blocks: int = 1,
                    n_entities: int = 12, n_relations: int = 3, batch: int = 6) -> None:
        """Full model under cross entropy, every parameter, batch norm and dropout in train mode."""
        config = ModelConfig(dim=dim, deepe_blocks=deepe_blocks, resnet_blocks=resnet_blocks, resnet_inner=2,
                             dropout=DropoutSpec(p_input=0.1, p_fc=0.1, p_identity=0.05, p_resnet_fc=0.1),
                             seed=self.rng.seed, precision=self.precision)
        model = DeepEModel(config, n_entities, n_relations)
        model.set_mode(Mode.TRAIN)
        states = _rng_states(model)
        for attempt in range(KINK_RETRIES):
            draws = self.rng.split(999, attempt) if attempt else self.rng.split(999)
            heads = draws.integers(0, n_entities, size=batch)
            relations = draws.integers(0, 2 * n_relations, size=batch)
            gold = draws.integers(0, n_entities, size=batch)
            _restore_rngs(model, states)
            model.score_all(heads, relations, Mode.TRAIN)
            if relu_margin(model) >= KINK_MARGIN:
                break
            logger.debug("model: ReLU input within {} of zero, redrawing the batch.".format(KINK_MARGIN))

        def loss() -> float:
            _restore_rngs(model, states)
            scores = model.score_all(heads, relations, Mode.TRAIN, cache=False)
            return cross_entropy_loss(scores.astype(np.float64), gold)[0]

        model.flush_gradients()
        _restore_rngs(model, states)
        scores = model.score_all(heads, relations, Mode.TRAIN)
        _, d_scores = cross_entropy_loss(scores, gold)
        model.backward(d_scores)
        for name, param, grad in list(model.named_parameters()):
            analytic = grad.copy() * self.scale
            self._record("model", name, analytic, numeric_gradient(loss, param, self.step))

    # -------------------------------------------------------------------------------------------------------------------- #
    def run(self) -> pd.DataFrame:
        """Every layer type, both block kinds, the losses and the full model."""
        d = self.dtype
        self.check_layer("linear", LinearLayer(5, 4, self.rng.split(10), d), self._draw(6, 5))
        self.check_layer("batchnorm_train", BatchNormLayer(4, d), self._draw(6, 4))
        bn = BatchNormLayer(4, d)
        bn.buffers["running_mean"][:] = self._draw(4)
        bn.buffers["running_var"][:] = np.abs(self._draw(4)) + 0.5
        self.check_layer("batchnorm_eval", bn, self._draw(6, 4), Mode.EVAL)
        self.check_layer("dropout", DropoutLayer(0.3, self.rng.split(11)), self._draw(6, 4))
        self.check_relu()
        self.check_layer("deepe_block_projection", DeepEBlock(6, 4, 2, self.rng.split(12), d, p_fc=0.2,
                                                              p_identity=0.1), self._draw(6, 6))
        self.check_layer("deepe_block", DeepEBlock(4, 4, 2, self.rng.split(13), d, p_fc=0.2, p_identity=0.1),
                         self._draw(6, 4))
        frozen = DeepEBlock(4, 4, 3, self.rng.split(14), d)
        self._shift_affine(frozen, self.rng.split(16))
        self.check_layer("deepe_block_eval", frozen, self._draw(6, 4), Mode.EVAL)
        self.check_layer("resnet_block", ResNetBlock(4, 4, 3, self.rng.split(15), d, p_fc=0.2), self._draw(6, 4))
        self.check_losses()
        self.check_model()
        report = pd.DataFrame(self.rows, columns=REPORT_COLUMNS)
        logger.info("Gradient check: {} groups, max relative error {:.3g}, {} failed.".format(
            len(report), report["rel_error"].max(), int((~report["passed"]).sum())))
        return report


def run_gradcheck(precision: int = 64, perturb_backward: bool = False, seed: int = 0) -> pd.DataFrame:
    return GradientChecker(precision, perturb_backward, seed).run()


def assert_gradients(report: pd.DataFrame, strict: bool = True) -> None:
    """Raises GradientCheckError on any group above tolerance. With ``strict`` off, failures are only logged."""
    failed = report.loc[~report["passed"]]
    if len(failed):
        listing = ", ".join("{}:{} ({:.3g})".format(c, p, e)
                            for c, p, e in failed[["check", "parameter", "rel_error"]].itertuples(index=False))
        msg = "Gradient check failed for {} parameter groups: {}".format(len(failed), listing)
        if not strict:
            logger.warning("{} (reported, not enforced)".format(msg))
            return
        logger.error(msg)
        raise GradientCheckError(msg)

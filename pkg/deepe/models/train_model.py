#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# ======================================================================================================================== #
# Project  : DeepE Knowledge Graph Embedding                                                                               #
# Version  : 0.1.0                                                                                                         #
# File     : \train_model.py                                                                                               #
# Language : Python 3.8.12                                                                                                 #
# ------------------------------------------------------------------------------------------------------------------------ #
# Author   : John James                                                                                                    #
# Company  : nov8.ai                                                                                                       #
# Email    : john.james.sf@gmail.com                                                                                       #
# URL      : https://github.com/john-james-sf/deepe                                                                        #
# ------------------------------------------------------------------------------------------------------------------------ #
# Created  : Sunday, September 27th 2026, 1:19:00 am                                                                       #
# Modified : Sunday, October 4th 2026, 12:42:00 am                                                                         #
# Modifier : John James (john.james.sf@gmail.com)                                                                          #
# ------------------------------------------------------------------------------------------------------------------------ #
# License  : BSD 3-clause "New" or "Revised" License                                                                       #
# Copyright: (c) 2026 nov8.ai                                                                                              #
# ======================================================================================================================== #

"""Losses, optimizer, learning-rate schedule, early stopping and the training loop."""
from dataclasses import asdict, dataclass, field
import logging
import time
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from deepe.data.dataset import Dataset
from deepe.models.evaluate_model import evaluate
from deepe.models.layers import Mode, Module
from deepe.models.model import DeepEModel, ModelConfig
from deepe.models.numkernel import Rng
from deepe.utils.exceptions import ConfigError, NonFiniteLossError, ShapeError
# ------------------------------------------------------------------------------------------------------------------------ #
logger = logging.getLogger(__name__)
# ------------------------------------------------------------------------------------------------------------------------ #
LOSSES = ("softmax", "bce")
LOG_COLUMNS = ["epoch", "train_loss", "lr", "valid_mrr", "valid_mr", "valid_hits1", "valid_hits10"]
SHUFFLE_STREAM = 101


def _fail(msg: str, error=ConfigError):
    logger.error(msg)
    raise error(msg)


@dataclass
class TrainConfig:
    lr: float = 0.003
    l2: float = 0.0
    batch_size: int = 512
    seed: int = 0
    max_epochs: int = 1000
    plateau_factor: float = 0.8
    plateau_patience: int = 5
    early_stop_patience: int = 10
    eval_every: int = 1
    label_smoothing: float = 0.0
    loss: str = "softmax"
    valid_split: str = "valid"

    def __post_init__(self) -> None:
        if self.lr < 0 or self.l2 < 0:
            _fail("lr and l2 must be non-negative, got lr={}, l2={}.".format(self.lr, self.l2))
        if self.batch_size < 2:
            _fail("batch_size must be >= 2 for batch norm, got {}.".format(self.batch_size))
        if self.max_epochs < 1 or self.eval_every < 1:
            _fail("max_epochs and eval_every must be >= 1, got {} and {}.".format(self.max_epochs, self.eval_every))
        if self.plateau_patience < 1 or self.early_stop_patience < 1:
            _fail("Patience values must be >= 1, got plateau {} and early stop {}.".format(
                self.plateau_patience, self.early_stop_patience))
        if not 0 < self.plateau_factor < 1:
            _fail("plateau_factor must lie in (0, 1), got {}.".format(self.plateau_factor))
        if not 0 <= self.label_smoothing < 1:
            _fail("label_smoothing must lie in [0, 1), got {}.".format(self.label_smoothing))
        if self.loss not in LOSSES:
            _fail("loss must be one of {}, got {}.".format(LOSSES, self.loss))
        if self.valid_split not in ("train", "valid", "test"):
            _fail("valid_split must name a split, got {}.".format(self.valid_split))

    def to_dict(self) -> dict:
        return asdict(self)


# ------------------------------------------------------------------------------------------------------------------------ #
#                                                       LOSSES                                                             #
# ------------------------------------------------------------------------------------------------------------------------ #
def cross_entropy_loss(scores: np.ndarray, gold: np.ndarray, label_smoothing: float = 0.0
                       ) -> Tuple[float, np.ndarray]:
    """Softmax cross entropy over all entities with the gold tail as target.

    Returns the mean loss and dLoss/dScores = (softmax - target) / batch. Label smoothing
    moves ``label_smoothing`` of the target mass uniformly over all entities.
    """
    batch, n = scores.shape
    gold = np.asarray(gold, dtype=np.int64)
    if gold.shape != (batch,) or (batch and (gold.min() < 0 or gold.max() >= n)):
        _fail("Gold ids must be {} values in [0, {}).".format(batch, n), ShapeError)
    shifted = scores - scores.max(axis=1, keepdims=True)
    log_norm = np.log(np.exp(shifted).sum(axis=1, keepdims=True))
    log_probs = shifted - log_norm
    target = np.full_like(scores, label_smoothing / n)
    target[np.arange(batch), gold] += 1.0 - label_smoothing
    loss = float(-(target * log_probs).sum(axis=1).mean())
    d_scores = (np.exp(log_probs) - target) / batch
    return loss, d_scores


def binary_cross_entropy_loss(scores: np.ndarray, targets: np.ndarray, label_smoothing: float = 0.0
                              ) -> Tuple[float, np.ndarray]:
    """Element-wise sigmoid cross entropy against 1-N multi-hot targets, averaged over all cells."""
    if scores.shape != targets.shape:
        _fail("Scores {} and targets {} differ in shape.".format(scores.shape, targets.shape), ShapeError)
    n = scores.shape[1]
    targets = (1.0 - label_smoothing) * targets + label_smoothing / n
    loss = float((np.logaddexp(0, scores) - targets * scores).mean())
    sigmoid = 0.5 * (1.0 + np.tanh(0.5 * scores))
    d_scores = (sigmoid - targets) / scores.size
    return loss, d_scores.astype(scores.dtype, copy=False)


def multi_hot(index: Dict[Tuple[int, int], np.ndarray], heads: np.ndarray, relations: np.ndarray,
              n_entities: int, dtype=np.float32) -> np.ndarray:
    targets = np.zeros((len(heads), n_entities), dtype=dtype)
    for row, (h, r) in enumerate(zip(heads, relations)):
        targets[row, index.get((int(h), int(r)), [])] = 1
    return targets


# ------------------------------------------------------------------------------------------------------------------------ #
#                                                      OPTIMIZER                                                           #
# ------------------------------------------------------------------------------------------------------------------------ #
@dataclass
class AdamState:
    """First and second moments per named parameter plus the step counter."""

    m: Dict[str, np.ndarray]
    v: Dict[str, np.ndarray]
    step: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    @classmethod
    def zeros_like(cls, params: Dict[str, np.ndarray], **kwargs) -> "AdamState":
        return cls(m={k: np.zeros_like(p) for k, p in params.items()},
                   v={k: np.zeros_like(p) for k, p in params.items()}, **kwargs)

    def to_arrays(self) -> Dict[str, np.ndarray]:
        arrays = {"adam.step": np.asarray(self.step, dtype=np.int64)}
        arrays.update(("adam.m." + k, m) for k, m in self.m.items())
        arrays.update(("adam.v." + k, v) for k, v in self.v.items())
        return arrays

    @classmethod
    def from_arrays(cls, arrays: Dict[str, np.ndarray]) -> "AdamState":
        m = {k[len("adam.m."):]: a for k, a in arrays.items() if k.startswith("adam.m.")}
        v = {k[len("adam.v."):]: a for k, a in arrays.items() if k.startswith("adam.v.")}
        return cls(m=m, v=v, step=int(arrays["adam.step"]))


def adam_step(params: Dict[str, np.ndarray], grads: Dict[str, np.ndarray], state: AdamState,
              lr: float, l2: float = 0.0) -> Dict[str, np.ndarray]:
    """One bias-corrected Adam update, in place. L2 enters as grad + l2 * param."""
    if set(params) != set(grads) or set(params) != set(state.m):
        _fail("Parameter, gradient and moment names differ.", ShapeError)
    state.step += 1
    b1, b2 = state.beta1, state.beta2
    correction1 = 1.0 - b1 ** state.step
    correction2 = 1.0 - b2 ** state.step
    for name, param in params.items():
        grad = grads[name]
        if grad.shape != param.shape or state.m[name].shape != param.shape:
            _fail("Parameter {} has shape {} but gradient {} and moment {}.".format(
                name, param.shape, grad.shape, state.m[name].shape), ShapeError)
        if l2:
            grad = grad + l2 * param
        m, v = state.m[name], state.v[name]
        m *= b1
        m += (1 - b1) * grad
        v *= b2
        v += (1 - b2) * grad * grad
        param -= (lr * (m / correction1) / (np.sqrt(v / correction2) + state.eps)).astype(param.dtype, copy=False)
    return params


class Adam:
    """Adam over every named parameter of a module."""

    def __init__(self, module: Module, lr: float, l2: float = 0.0) -> None:
        self.module = module
        self.lr = lr
        self.l2 = l2
        named = list(module.named_parameters())
        self.params = {name: param for name, param, _ in named}
        self.grads = {name: grad for name, _, grad in named}
        self.state = AdamState.zeros_like(self.params)

    def step(self) -> None:
        adam_step(self.params, self.grads, self.state, self.lr, self.l2)

    def zero_grad(self) -> None:
        self.module.flush_gradients()


# ------------------------------------------------------------------------------------------------------------------------ #
#                                                SCHEDULE AND STOPPING                                                     #
# ------------------------------------------------------------------------------------------------------------------------ #


class PlateauScheduler:
    """Multiplies the learning rate by ``factor`` once the best loss has not strictly improved
    for ``patience`` consecutive epochs. The counter resets on improvement and on decay."""

    def __init__(self, lr: float, factor: float = 0.8, patience: int = 5) -> None:
        self.lr = lr
        self.factor = factor
        self.patience = patience
        self.best: Optional[float] = None
        self.counter = 0

    def step(self, loss: float) -> bool:
        """Records one epoch's loss. Returns True when the rate was decayed."""
        if self.best is None or loss < self.best:
            self.best = loss
            self.counter = 0
            return False
        self.counter += 1
        if self.counter >= self.patience:
            self.lr *= self.factor
            self.counter = 0
            logger.info("Training loss flat for {} epochs; learning rate decayed to {:.6g}.".format(
                self.patience, self.lr))
            return True
        return False


def lr_schedule_update(history: Sequence[float], lr: float, factor: float = 0.8, patience: int = 5) -> float:
    """Learning rate after replaying ``history`` from a starting rate of ``lr``.

    Every plateau in the history decays the rate, so ten flat epochs after the first give two decays.
    """
    if not len(history):
        _fail("lr_schedule_update needs at least one completed epoch.", ValueError)
    scheduler = PlateauScheduler(lr, factor, patience)
    for loss in history:
        scheduler.step(loss)
    return scheduler.lr


class EarlyStopping:
    """Stops once the metric has not strictly improved for ``patience`` evaluations."""

    def __init__(self, patience: int = 10, mode: str = "max") -> None:
        self.patience = patience
        self.mode = mode
        self.best: Optional[float] = None
        self.counter = 0
        self.should_stop = False

    def step(self, metric: float) -> bool:
        """Returns True when the metric improved."""
        if self.best is None:
            self.best = metric
            return True
        improvement = metric - self.best if self.mode == "max" else self.best - metric
        if improvement > 0:
            self.best = metric
            self.counter = 0
            return True
        self.counter += 1
        if self.counter >= self.patience:
            self.should_stop = True
        return False


# ------------------------------------------------------------------------------------------------------------------------ #
#                                                    TRAINING LOOP                                                         #
# ------------------------------------------------------------------------------------------------------------------------ #
def make_batches(order: np.ndarray, batch_size: int) -> List[np.ndarray]:
    """Splits a permutation into batches, folding a trailing batch of one into its predecessor."""
    batches = [order[i:i + batch_size] for i in range(0, len(order), batch_size)]
    if len(batches) > 1 and len(batches[-1]) == 1:
        logger.debug("Merging a trailing batch of one into the previous batch.")
        batches[-2] = np.concatenate([batches[-2], batches.pop()])
    return batches


def train_step(model: DeepEModel, optimizer: Adam, batch: np.ndarray, config: TrainConfig,
               dataset: Optional[Dataset] = None, mode: Mode = Mode.TRAIN) -> float:
    """Forward, loss, backward and one optimizer step on a batch of (head, relation, tail) rows."""
    heads, relations, tails = batch[:, 0], batch[:, 1], batch[:, 2]
    optimizer.zero_grad()
    scores = model.score_all(heads, relations, mode)
    if config.loss == "bce":
        index = dataset.train_index if dataset is not None else {}
        targets = multi_hot(index, heads, relations, model.n_entities, scores.dtype)
        targets[np.arange(len(tails)), tails] = 1
        loss, d_scores = binary_cross_entropy_loss(scores, targets, config.label_smoothing)
    else:
        loss, d_scores = cross_entropy_loss(scores, tails, config.label_smoothing)
    if not np.isfinite(loss):
        _fail("Non-finite loss {} on a batch of {} (lr {:.6g}, max |score| {:.6g}).".format(
            loss, len(batch), optimizer.lr, float(np.abs(scores).max())), NonFiniteLossError)
    model.backward(d_scores.astype(scores.dtype, copy=False))
    optimizer.step()
    return loss


@dataclass
class TrainResult:
    model: DeepEModel
    optimizer: Adam
    best_state: Dict[str, np.ndarray]
    best_epoch: int
    best_valid_mrr: float
    log: pd.DataFrame
    stopped_early: bool
    elapsed: float = 0.0
    final_state: Dict[str, np.ndarray] = field(default_factory=dict)


def train_loop(dataset: Dataset, model_config: ModelConfig, train_config: TrainConfig,
               ties: str = "average", workers: Optional[int] = None,
               model: Optional[DeepEModel] = None,
               on_epoch: Optional[Callable[[dict], None]] = None) -> TrainResult:
    """Trains on the reverse-augmented train split and keeps the state with the best valid MRR.

    Arguments:
        dataset: Loaded dataset.
        model_config: Architecture. Ignored when ``model`` is given.
        train_config: Optimizer, schedule and stopping settings.
        ties: Tie policy of the model-selection evaluation.
        workers: Evaluation worker count.
        model: Optional pre-built model to continue training.
        on_epoch: Called with each log row.
    """
    start = time.time()
    model = model or DeepEModel(model_config, dataset.n_entities, dataset.n_relations)
    optimizer = Adam(model, train_config.lr, train_config.l2)
    scheduler = PlateauScheduler(train_config.lr, train_config.plateau_factor, train_config.plateau_patience)
    stopper = EarlyStopping(train_config.early_stop_patience, mode="max")
    shuffle = Rng(train_config.seed).split(SHUFFLE_STREAM)
    triples = dataset.train_augmented
    if len(triples) < 2:
        _fail("Training needs at least one train triple.", ConfigError)

    rows = []
    best_state = model.state_dict()
    best_epoch, best_mrr = 0, float("-inf")
    for epoch in range(1, train_config.max_epochs + 1):
        model.set_mode(Mode.TRAIN)
        total = 0.0
        for index in make_batches(shuffle.permutation(len(triples)), train_config.batch_size):
            total += train_step(model, optimizer, triples[index], train_config, dataset) * len(index)
        train_loss = total / len(triples)
        lr_used = optimizer.lr
        scheduler.step(train_loss)
        optimizer.lr = scheduler.lr

        row = {"epoch": epoch, "train_loss": train_loss, "lr": lr_used, "valid_mrr": np.nan,
               "valid_mr": np.nan, "valid_hits1": np.nan, "valid_hits10": np.nan}
        if epoch % train_config.eval_every == 0:
            model.set_mode(Mode.EVAL)
            overall = evaluate(model, dataset, train_config.valid_split, ties=ties, workers=workers).overall["both"]
            row.update(valid_mrr=overall.mrr, valid_mr=overall.mr, valid_hits1=overall.hits1,
                       valid_hits10=overall.hits10)
            if stopper.step(overall.mrr):
                best_state, best_epoch, best_mrr = model.state_dict(), epoch, overall.mrr
        rows.append(row)
        logger.info("Epoch {}: loss {:.6g}, lr {:.6g}, {} MRR {:.6g}.".format(
            epoch, train_loss, lr_used, train_config.valid_split, row["valid_mrr"]))
        if on_epoch is not None:
            on_epoch(row)
        if stopper.should_stop:
            logger.info("Early stopping at epoch {}; best {} MRR {:.6g} at epoch {}.".format(
                epoch, train_config.valid_split, best_mrr, best_epoch))
            break

    final_state = model.state_dict()
    model.set_mode(Mode.EVAL)
    return TrainResult(model=model, optimizer=optimizer, best_state=best_state, best_epoch=best_epoch,
                       best_valid_mrr=best_mrr, log=pd.DataFrame(rows, columns=LOG_COLUMNS),
                       stopped_early=stopper.should_stop, elapsed=time.time() - start, final_state=final_state)

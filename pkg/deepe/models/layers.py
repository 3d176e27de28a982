#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# ======================================================================================================================== #
# Project  : DeepE Knowledge Graph Embedding                                                                               #
# Version  : 0.1.0                                                                                                         #
# File     : \layers.py                                                                                                    #
# Language : Python 3.8.12                                                                                                 #
# ------------------------------------------------------------------------------------------------------------------------ #
# Author   : John James                                                                                                    #
# Company  : nov8.ai                                                                                                       #
# Email    : john.james.sf@gmail.com                                                                                       #
# URL      : https://github.com/john-james-sf/deepe                                                                        #
# ------------------------------------------------------------------------------------------------------------------------ #
# Created  : Thursday, September 24th 2026, 6:28:00 am                                                                     #
# Modified : Wednesday, September 30th 2026, 8:50:00 am                                                                    #
# Modifier : John James (john.james.sf@gmail.com)                                                                          #
# ------------------------------------------------------------------------------------------------------------------------ #
# License  : BSD 3-clause "New" or "Revised" License                                                                       #
# Copyright: (c) 2026 nov8.ai                                                                                              #
# ======================================================================================================================== #

"""Stateful layers with explicit forward/backward contracts.

Every layer keeps its learnable arrays in ``parameters`` and accumulates gradients into
``gradients`` under the same keys. Forward passes cache what backward needs unless called
with ``cache=False``; eval-mode forward never mutates parameters or running statistics.
"""
from abc import ABC, abstractmethod
from enum import Enum
import logging
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from deepe.models.numkernel import ACTIVATIONS, Rng, check_matrix, matmul, xavier_normal_init
from deepe.utils.exceptions import ConfigError, MissingCacheError, ModeError, ShapeError
# ------------------------------------------------------------------------------------------------------------------------ #
logger = logging.getLogger(__name__)
# ------------------------------------------------------------------------------------------------------------------------ #
BN_MOMENTUM = 0.1
BN_EPS = 1e-5


class Mode(str, Enum):
    TRAIN = "train"
    EVAL = "eval"


# ------------------------------------------------------------------------------------------------------------------------ #


class Module:
    """Container of learnable arrays, non-learnable buffers and sub-modules.

    Subclasses register learnable arrays in ``parameters``, non-learnable state in
    ``buffers`` and children through ``named_children``.
    """

    def __init__(self) -> None:
        self.name = self.__class__.__name__
        self.parameters: Dict[str, np.ndarray] = {}
        self.gradients: Dict[str, np.ndarray] = {}
        self.buffers: Dict[str, np.ndarray] = {}
        self.mode = Mode.TRAIN
        self._cache = None

    def named_children(self) -> List[Tuple[str, "Module"]]:
        return []

    def named_parameters(self, prefix: str = "") -> Iterator[Tuple[str, np.ndarray, np.ndarray]]:
        """Yields (name, parameter, gradient buffer) in a stable order."""
        for key, param in self.parameters.items():
            yield prefix + key, param, self.gradients[key]
        for child_name, child in self.named_children():
            yield from child.named_parameters(prefix + child_name + ".")

    def named_buffers(self, prefix: str = "") -> Iterator[Tuple[str, np.ndarray]]:
        for key, buffer in self.buffers.items():
            yield prefix + key, buffer
        for child_name, child in self.named_children():
            yield from child.named_buffers(prefix + child_name + ".")

    def named_rngs(self, prefix: str = "") -> Iterator[Tuple[str, Rng]]:
        rng = getattr(self, "rng", None)
        if rng is not None:
            yield prefix.rstrip("."), rng
        for child_name, child in self.named_children():
            yield from child.named_rngs(prefix + child_name + ".")

    def set_mode(self, mode: Mode) -> None:
        self.mode = Mode(mode)
        for _, child in self.named_children():
            child.set_mode(mode)

    def flush_gradients(self) -> None:
        for grad in self.gradients.values():
            grad.fill(0)
        for _, child in self.named_children():
            child.flush_gradients()

    def clear_cache(self) -> None:
        self._cache = None
        for _, child in self.named_children():
            child.clear_cache()

    def _check_mode(self, mode: Mode) -> Mode:
        mode = Mode(mode)
        if mode is not self.mode:
            msg = "{} is in {} mode but forward was called in {} mode.".format(
                self.name, self.mode.value, mode.value)
            logger.error(msg)
            raise ModeError(msg)
        return mode

    def _check_input(self, x: np.ndarray, dim: int) -> None:
        check_matrix("{} input".format(self.name), x)
        if x.shape[1] != dim:
            msg = "{} expects {} input columns, got shape {}.".format(self.name, dim, x.shape)
            logger.error(msg)
            raise ShapeError(msg)

    def _require_cache(self):
        if self._cache is None:
            msg = "{} backward called without a cached forward pass.".format(self.name)
            logger.error(msg)
            raise MissingCacheError(msg)
        return self._cache


class Layer(Module, ABC):
    """A module with a batch forward pass and its hand-written backward pass."""

    @abstractmethod
    def forward(self, x: np.ndarray, mode: Mode, cache: bool = True) -> np.ndarray:
        pass

    @abstractmethod
    def backward(self, upstream: np.ndarray) -> np.ndarray:
        pass


# ------------------------------------------------------------------------------------------------------------------------ #


class LinearLayer(Layer):
    """Affine map y = x W^T + b with W of shape (out_dim, in_dim)."""

    def __init__(self, in_dim: int, out_dim: int, rng: Rng, dtype=np.float32) -> None:
        super(LinearLayer, self).__init__()
        self.in_dim = in_dim
        self.out_dim = out_dim
        self.parameters["weight"] = xavier_normal_init(out_dim, in_dim, rng, dtype)
        self.parameters["bias"] = np.zeros(out_dim, dtype=dtype)
        self.gradients = {k: np.zeros_like(v) for k, v in self.parameters.items()}

    @property
    def weight(self) -> np.ndarray:
        return self.parameters["weight"]

    @property
    def bias(self) -> np.ndarray:
        return self.parameters["bias"]

    def forward(self, x: np.ndarray, mode: Mode, cache: bool = True) -> np.ndarray:
        self._check_mode(mode)
        self._check_input(x, self.in_dim)
        if cache:
            self._cache = x
        return matmul(x, self.weight.T) + self.bias

    def backward(self, upstream: np.ndarray) -> np.ndarray:
        x = self._require_cache()
        self.gradients["weight"] += matmul(upstream.T, x)
        self.gradients["bias"] += upstream.sum(axis=0)
        return matmul(upstream, self.weight)


# ------------------------------------------------------------------------------------------------------------------------ #


class BatchNormLayer(Layer):
    """Per-feature batch normalization.

    Train mode normalizes with batch statistics and folds them into the running statistics
    with ``momentum`` (running variance uses the unbiased batch variance). Eval mode applies
    the running statistics, which makes it a fixed affine map.
    """

    def __init__(self, features: int, dtype=np.float32, momentum: float = BN_MOMENTUM, eps: float = BN_EPS) -> None:
        super(BatchNormLayer, self).__init__()
        self.features = features
        self.momentum = momentum
        self.eps = eps
        self.parameters["gamma"] = np.ones(features, dtype=dtype)
        self.parameters["beta"] = np.zeros(features, dtype=dtype)
        self.gradients = {k: np.zeros_like(v) for k, v in self.parameters.items()}
        self.buffers["running_mean"] = np.zeros(features, dtype=dtype)
        self.buffers["running_var"] = np.ones(features, dtype=dtype)

    def forward(self, x: np.ndarray, mode: Mode, cache: bool = True) -> np.ndarray:
        mode = self._check_mode(mode)
        self._check_input(x, self.features)
        if mode is Mode.TRAIN:
            n = x.shape[0]
            if n < 2:
                msg = "Batch norm in train mode needs a batch of at least 2 rows, got {}.".format(n)
                logger.error(msg)
                raise ShapeError(msg)
            mean = x.mean(axis=0)
            var = x.var(axis=0)
            inv_std = 1.0 / np.sqrt(var + self.eps)
            xhat = (x - mean) * inv_std
            m = self.momentum
            self.buffers["running_mean"] *= (1 - m)
            self.buffers["running_mean"] += m * mean
            self.buffers["running_var"] *= (1 - m)
            self.buffers["running_var"] += m * var * (n / (n - 1))
        else:
            inv_std = 1.0 / np.sqrt(self.buffers["running_var"] + self.eps)
            xhat = (x - self.buffers["running_mean"]) * inv_std
        if cache:
            self._cache = (mode, xhat, inv_std)
        return self.parameters["gamma"] * xhat + self.parameters["beta"]

    def backward(self, upstream: np.ndarray) -> np.ndarray:
        mode, xhat, inv_std = self._require_cache()
        self.gradients["gamma"] += (upstream * xhat).sum(axis=0)
        self.gradients["beta"] += upstream.sum(axis=0)
        dxhat = upstream * self.parameters["gamma"]
        if mode is Mode.EVAL:
            return dxhat * inv_std
        n = upstream.shape[0]
        return (inv_std / n) * (n * dxhat - dxhat.sum(axis=0) - xhat * (dxhat * xhat).sum(axis=0))


# ------------------------------------------------------------------------------------------------------------------------ #


class DropoutLayer(Layer):
    """Inverted dropout: survivors are scaled by 1/(1-p) so eval mode is the identity."""

    def __init__(self, p: float, rng: Rng) -> None:
        super(DropoutLayer, self).__init__()
        if not 0.0 <= p < 1.0:
            msg = "Dropout probability must lie in [0, 1), got {}.".format(p)
            logger.error(msg)
            raise ConfigError(msg)
        self.p = float(p)
        self.rng = rng

    def forward(self, x: np.ndarray, mode: Mode, cache: bool = True) -> np.ndarray:
        mode = self._check_mode(mode)
        mask = None
        if mode is Mode.TRAIN and self.p > 0:
            keep = self.rng.uniform(x.shape) >= self.p
            mask = keep.astype(x.dtype) / x.dtype.type(1.0 - self.p)
        if cache:
            self._cache = (mask,)
        return x if mask is None else x * mask

    def backward(self, upstream: np.ndarray) -> np.ndarray:
        (mask,) = self._require_cache()
        return upstream if mask is None else upstream * mask


# ------------------------------------------------------------------------------------------------------------------------ #


class ResidualBlock(Layer):
    """Residual unit: identity branch plus a chain of inner linear layers.

    The identity branch is x, or Ws x when in_dim != out_dim, followed by identity dropout.
    The non-linear branch runs every inner layer as linear -> BN -> activation -> dropout,
    except the last, which is linear -> BN -> dropout. Gates zero a branch's contribution
    while keeping its parameters.

    Arguments:
        in_dim: Input width.
        out_dim: Output width. Every inner layer maps to out_dim.
        inner_layers: Number of linear layers in the non-linear branch.
        rng: Source for weight init and dropout masks.
        dtype: Parameter precision.
        p_fc: Dropout after each inner layer.
        p_identity: Dropout on the identity branch.
        batch_norm: Whether each inner linear layer is followed by batch norm.
        activation: Name of the inner non-linearity.
    """

    final_activation = False

    def __init__(self, in_dim: int, out_dim: int, inner_layers: int, rng: Rng, dtype=np.float32,
                 p_fc: float = 0.0, p_identity: float = 0.0, batch_norm: bool = True,
                 activation: str = "relu") -> None:
        super(ResidualBlock, self).__init__()
        if in_dim < 1 or out_dim < 1 or inner_layers < 1:
            msg = "{} needs positive dims and inner layers, got in={}, out={}, inner={}.".format(
                self.name, in_dim, out_dim, inner_layers)
            logger.error(msg)
            raise ConfigError(msg)
        if activation not in ACTIVATIONS:
            msg = "Unknown activation {}. Expected one of {}.".format(activation, sorted(ACTIVATIONS))
            logger.error(msg)
            raise ConfigError(msg)
        self.in_dim = in_dim
        self.out_dim = out_dim
        self.activation = activation
        self.gate_linear = True
        self.gate_nonlinear = True
        self.ws: Optional[LinearLayer] = LinearLayer(in_dim, out_dim, rng.split(0), dtype) if in_dim != out_dim else None
        self.fcs = [LinearLayer(in_dim if i == 0 else out_dim, out_dim, rng.split(1, i), dtype)
                    for i in range(inner_layers)]
        self.bns = [BatchNormLayer(out_dim, dtype) for _ in range(inner_layers)] if batch_norm else []
        self.dropouts = [DropoutLayer(p_fc, rng.split(2, i)) for i in range(inner_layers)]
        self.identity_dropout = DropoutLayer(p_identity, rng.split(3))

    def named_children(self) -> List[Tuple[str, Layer]]:
        children = [("ws", self.ws)] if self.ws is not None else []
        for i, fc in enumerate(self.fcs):
            children.append(("fc{}".format(i + 1), fc))
            if self.bns:
                children.append(("bn{}".format(i + 1), self.bns[i]))
            children.append(("dropout{}".format(i + 1), self.dropouts[i]))
        children.append(("identity_dropout", self.identity_dropout))
        return children

    def identity_branch(self, x: np.ndarray, mode: Mode, cache: bool = True) -> np.ndarray:
        identity = self.ws.forward(x, mode, cache) if self.ws is not None else x
        return self.identity_dropout.forward(identity, mode, cache)

    def nonlinear_branch(self, x: np.ndarray, mode: Mode, cache: bool = True) -> Tuple[np.ndarray, list]:
        act, _ = ACTIVATIONS[self.activation]
        last = len(self.fcs) - 1
        pre_acts = []
        h = x
        for i, fc in enumerate(self.fcs):
            h = fc.forward(h, mode, cache)
            if self.bns:
                h = self.bns[i].forward(h, mode, cache)
            if i < last:
                pre_acts.append(h)
                h = act(h)
            h = self.dropouts[i].forward(h, mode, cache)
        return h, pre_acts

    def forward(self, x: np.ndarray, mode: Mode, cache: bool = True) -> np.ndarray:
        mode = self._check_mode(mode)
        self._check_input(x, self.in_dim)
        out = np.zeros((x.shape[0], self.out_dim), dtype=x.dtype)
        if self.gate_linear:
            out = out + self.identity_branch(x, mode, cache)
        pre_acts = []
        if self.gate_nonlinear:
            h, pre_acts = self.nonlinear_branch(x, mode, cache)
            out = out + h
        pre_sum = out
        if self.final_activation:
            act, _ = ACTIVATIONS[self.activation]
            out = act(pre_sum)
        if cache:
            self._cache = (x.shape, pre_acts, pre_sum)
        return out

    def backward(self, upstream: np.ndarray) -> np.ndarray:
        x_shape, pre_acts, pre_sum = self._require_cache()
        if upstream.shape != pre_sum.shape:
            msg = "{} backward expects upstream of shape {}, got {}.".format(self.name, pre_sum.shape, upstream.shape)
            logger.error(msg)
            raise ShapeError(msg)
        _, act_backward = ACTIVATIONS[self.activation]
        grad = act_backward(pre_sum, upstream) if self.final_activation else upstream
        dx = np.zeros(x_shape, dtype=upstream.dtype)
        if self.gate_linear:
            g = self.identity_dropout.backward(grad)
            if self.ws is not None:
                g = self.ws.backward(g)
            dx = dx + g
        if self.gate_nonlinear:
            g = grad
            last = len(self.fcs) - 1
            for i in reversed(range(len(self.fcs))):
                g = self.dropouts[i].backward(g)
                if i < last:
                    g = act_backward(pre_acts[i], g)
                if self.bns:
                    g = self.bns[i].backward(g)
                g = self.fcs[i].backward(g)
            dx = dx + g
        return dx


class DeepEBlock(ResidualBlock):
    """F(x) = x + W2 s(W1 x), or Ws x + W2 s(W1 x) when the widths differ. No final activation."""

    final_activation = False


class ResNetBlock(ResidualBlock):
    """F(x) = s(x + W_k s(... s(W_1 x))). The activation is applied to the sum."""

    final_activation = True


BLOCK_KINDS = {"deepe": DeepEBlock, "resnet": ResNetBlock}


# ------------------------------------------------------------------------------------------------------------------------ #
def identity_dropout_total_drop_prob(n_blocks: int, alpha: float, order: int) -> float:
    """Total drop probability of the order-th non-linear feature after n_blocks identity dropouts.

    A feature of order i passes n_blocks - i identity mappings, each dropping with alpha, so it
    survives with (1 - alpha) ** (n_blocks - i).
    """
    if not 0 <= order <= n_blocks:
        msg = "Order must lie in [0, {}], got {}.".format(n_blocks, order)
        logger.error(msg)
        raise ValueError(msg)
    if not 0.0 <= alpha < 1.0:
        msg = "Identity dropout alpha must lie in [0, 1), got {}.".format(alpha)
        logger.error(msg)
        raise ValueError(msg)
    return 1.0 - (1.0 - alpha) ** (n_blocks - order)


def nonlinear_orders(n_blocks: int, inner_layers: int = 2, kind: str = "deepe") -> List[int]:
    """Non-linear orders of the terms produced by stacking n_blocks blocks.

    A DeepE stack yields one term per order 0, k, 2k, ..., n k with k = inner_layers - 1
    activations per block. A ResNet stack yields a single term of order n * inner_layers.
    """
    if kind not in BLOCK_KINDS:
        msg = "Unknown block kind {}. Expected one of {}.".format(kind, sorted(BLOCK_KINDS))
        logger.error(msg)
        raise ConfigError(msg)
    if kind == "resnet":
        return [n_blocks * inner_layers]
    per_block = inner_layers - 1
    return sorted({i * per_block for i in range(n_blocks + 1)})


def identity_dropout_table(n_blocks: int, alpha: float, step: Optional[int] = None) -> List[Tuple[int, float, float]]:
    """(order, total drop probability, survival) for orders 0, step, 2 step, ... up to n_blocks."""
    step = step or max(1, n_blocks // 4)
    rows = []
    for order in range(0, n_blocks + 1, step):
        drop = identity_dropout_total_drop_prob(n_blocks, alpha, order)
        rows.append((order, drop, 1.0 - drop))
    return rows

#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# ======================================================================================================================== #
# Project  : DeepE Knowledge Graph Embedding                                                                               #
# Version  : 0.1.0                                                                                                         #
# File     : \numkernel.py                                                                                                 #
# Language : Python 3.8.12                                                                                                 #
# ------------------------------------------------------------------------------------------------------------------------ #
# Author   : John James                                                                                                    #
# Company  : nov8.ai                                                                                                       #
# Email    : john.james.sf@gmail.com                                                                                       #
# URL      : https://github.com/john-james-sf/deepe                                                                        #
# ------------------------------------------------------------------------------------------------------------------------ #
# Created  : Wednesday, September 23rd 2026, 4:51:00 am                                                                    #
# Modified : Monday, September 28th 2026, 7:04:00 am                                                                       #
# Modifier : John James (john.james.sf@gmail.com)                                                                          #
# ------------------------------------------------------------------------------------------------------------------------ #
# License  : BSD 3-clause "New" or "Revised" License                                                                       #
# Copyright: (c) 2026 nov8.ai                                                                                              #
# ======================================================================================================================== #

"""Dense numeric kernel: seeded randomness and the primitive forward/backward math.

Matrices are plain two dimensional ``numpy.ndarray`` objects stored row-major, with the batch
dimension along the rows. Two precisions are supported: 32-bit for training and evaluation,
64-bit for finite-difference gradient checks.
"""
import copy
import logging
from typing import Iterable, Sequence

import numpy as np

from deepe.utils.exceptions import ConfigError, ShapeError
# ------------------------------------------------------------------------------------------------------------------------ #
logger = logging.getLogger(__name__)
# ------------------------------------------------------------------------------------------------------------------------ #
PRECISIONS = {32: np.float32, 64: np.float64}


def resolve_dtype(precision: int) -> np.dtype:
    """Returns the numpy dtype for a precision given in bits (32 or 64)."""
    try:
        return np.dtype(PRECISIONS[int(precision)])
    except (KeyError, ValueError):
        msg = "Unsupported precision {}. Expected one of {}.".format(precision, sorted(PRECISIONS))
        logger.error(msg)
        raise ConfigError(msg)


# ------------------------------------------------------------------------------------------------------------------------ #


class Rng:
    """Seeded, splittable random source owned by its caller.

    Wraps numpy's counter-based Philox bit generator. Identical seeds and streams produce
    identical draw sequences; ``split`` derives independent child streams without touching
    the parent's state.

    Arguments:
        seed: Non-negative 64-bit integer seed.
        stream: Optional tuple of non-negative integers naming a sub-stream.
    """

    def __init__(self, seed: int, stream: Sequence[int] = ()) -> None:
        if int(seed) < 0:
            msg = "Seed must be non-negative, got {}.".format(seed)
            logger.error(msg)
            raise ValueError(msg)
        self.seed = int(seed)
        self.stream = tuple(int(s) for s in stream)
        sequence = np.random.SeedSequence([self.seed, *self.stream])
        self._generator = np.random.Generator(np.random.Philox(sequence))

    def split(self, *stream: int) -> "Rng":
        """Returns an independent generator for the named sub-stream."""
        return Rng(self.seed, self.stream + tuple(stream))

    def normal(self, scale: float, shape: Iterable[int], dtype=np.float64) -> np.ndarray:
        draws = self._generator.standard_normal(tuple(shape), dtype=np.dtype(dtype).type)
        return draws * np.asarray(scale, dtype=dtype)

    def uniform(self, shape: Iterable[int], dtype=np.float64) -> np.ndarray:
        return self._generator.random(tuple(shape), dtype=np.dtype(dtype).type)

    def permutation(self, n: int) -> np.ndarray:
        return self._generator.permutation(n)

    def integers(self, low: int, high: int, size=None) -> np.ndarray:
        return self._generator.integers(low, high, size=size)

    def get_state(self) -> dict:
        return copy.deepcopy(self._generator.bit_generator.state)

    def set_state(self, state: dict) -> None:
        self._generator.bit_generator.state = copy.deepcopy(state)


# ------------------------------------------------------------------------------------------------------------------------ #
def check_matrix(name: str, x: np.ndarray) -> None:
    if x.ndim != 2:
        msg = "{} must be a 2-D matrix, got shape {}.".format(name, x.shape)
        logger.error(msg)
        raise ShapeError(msg)


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Standard matrix product with both shapes named on mismatch."""
    check_matrix("left operand", a)
    check_matrix("right operand", b)
    if a.shape[1] != b.shape[0]:
        msg = "Cannot multiply {} by {}: inner dimensions {} and {} differ.".format(
            a.shape, b.shape, a.shape[1], b.shape[0])
        logger.error(msg)
        raise ShapeError(msg)
    return a @ b


def xavier_normal_init(rows: int, cols: int, rng: Rng, dtype=np.float32, gain: float = 1.0) -> np.ndarray:
    """Draws a rows x cols matrix from normal(0, gain * sqrt(2 / (fan_in + fan_out)))."""
    if rows < 1 or cols < 1:
        msg = "Xavier init needs rows, cols >= 1, got ({}, {}).".format(rows, cols)
        logger.error(msg)
        raise ShapeError(msg)
    std = gain * np.sqrt(2.0 / (rows + cols))
    return rng.normal(std, (rows, cols), dtype=dtype)


def relu_forward(x: np.ndarray) -> np.ndarray:
    return np.maximum(x, 0).astype(x.dtype, copy=False)


def relu_backward(x: np.ndarray, upstream: np.ndarray) -> np.ndarray:
    """Passes upstream where x > 0. The subgradient at exactly zero is zero."""
    if x.shape != upstream.shape:
        msg = "ReLU backward shapes differ: input {} vs upstream {}.".format(x.shape, upstream.shape)
        logger.error(msg)
        raise ShapeError(msg)
    return np.where(x > 0, upstream, 0).astype(upstream.dtype, copy=False)


def identity_forward(x: np.ndarray) -> np.ndarray:
    return x


def identity_backward(x: np.ndarray, upstream: np.ndarray) -> np.ndarray:
    if x.shape != upstream.shape:
        msg = "Identity backward shapes differ: input {} vs upstream {}.".format(x.shape, upstream.shape)
        logger.error(msg)
        raise ShapeError(msg)
    return upstream


# Non-linearities selectable by name. "identity" exists only to check linear collapse.
ACTIVATIONS = {
    "relu": (relu_forward, relu_backward),
    "identity": (identity_forward, identity_backward),
}

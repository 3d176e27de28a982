#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# ======================================================================================================================== #
# Project  : DeepE Knowledge Graph Embedding                                                                               #
# Version  : 0.1.0                                                                                                         #
# File     : \test_numkernel.py                                                                                            #
# Language : Python 3.8.12                                                                                                 #
# ------------------------------------------------------------------------------------------------------------------------ #
# Author   : John James                                                                                                    #
# Company  : nov8.ai                                                                                                       #
# Email    : john.james.sf@gmail.com                                                                                       #
# URL      : https://github.com/john-james-sf/deepe                                                                        #
# ------------------------------------------------------------------------------------------------------------------------ #
# Created  : Wednesday, September 23rd 2026, 4:51:00 am                                                                    #
# Modified : Saturday, September 26th 2026, 5:18:00 am                                                                     #
# Modifier : John James (john.james.sf@gmail.com)                                                                          #
# ------------------------------------------------------------------------------------------------------------------------ #
# License  : BSD 3-clause "New" or "Revised" License                                                                       #
# Copyright: (c) 2026 nov8.ai                                                                                              #
# ======================================================================================================================== #
# %%
import inspect
import logging

import numpy as np
import pytest

from deepe.models.numkernel import (Rng, matmul, relu_backward, relu_forward, resolve_dtype,
                                    xavier_normal_init)
from deepe.utils.exceptions import ConfigError, ShapeError
# ------------------------------------------------------------------------------------------------------------------------ #
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class RngTests:

    def test_determinism(self):
        logger.info("    Started {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

        a = Rng(7).normal(1.0, (3, 4))
        b = Rng(7).normal(1.0, (3, 4))
        assert np.array_equal(a, b), "Failure in {}".format(inspect.stack()[0][3])

        logger.info("    Successfully completed {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

    def test_split_is_independent_of_parent(self):
        logger.info("    Started {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

        parent = Rng(7)
        child1 = parent.split(1).uniform((5,))
        parent.uniform((100,))
        child2 = parent.split(1).uniform((5,))
        other = parent.split(2).uniform((5,))
        assert np.array_equal(child1, child2), "Failure in {}".format(inspect.stack()[0][3])
        assert not np.array_equal(child1, other), "Failure in {}".format(inspect.stack()[0][3])

        logger.info("    Successfully completed {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

    def test_state_restore(self):
        logger.info("    Started {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

        rng = Rng(3)
        state = rng.get_state()
        first = rng.uniform((4,))
        rng.set_state(state)
        assert np.array_equal(first, rng.uniform((4,))), "Failure in {}".format(inspect.stack()[0][3])

        logger.info("    Successfully completed {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

    def test_negative_seed(self):
        with pytest.raises(ValueError):
            Rng(-1)


class MatmulTests:

    def test_identity_and_zeros(self, rng64):
        logger.info("    Started {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

        a = rng64.normal(size=(3, 4))
        assert np.array_equal(matmul(np.eye(3), a), a), "Failure in {}".format(inspect.stack()[0][3])
        assert np.array_equal(matmul(np.zeros((2, 3)), a), np.zeros((2, 4))), \
            "Failure in {}".format(inspect.stack()[0][3])

        logger.info("    Successfully completed {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

    def test_triple_loop_oracle(self, rng64):
        logger.info("    Started {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

        a = rng64.normal(size=(5, 4))
        b = rng64.normal(size=(4, 3))
        expected = np.zeros((5, 3))
        for i in range(5):
            for j in range(3):
                for k in range(4):
                    expected[i, j] += a[i, k] * b[k, j]
        assert np.abs(matmul(a, b) - expected).max() < 1e-12, "Failure in {}".format(inspect.stack()[0][3])

        logger.info("    Successfully completed {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

    def test_mismatch_names_both_shapes(self):
        logger.info("    Started {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

        with pytest.raises(ShapeError) as e:
            matmul(np.zeros((2, 3)), np.zeros((4, 5)))
        assert "(2, 3)" in str(e.value) and "(4, 5)" in str(e.value), "Failure in {}".format(inspect.stack()[0][3])
        with pytest.raises(ShapeError):
            matmul(np.zeros(3), np.zeros((3, 1)))

        logger.info("    Successfully completed {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))


class InitTests:

    def test_xavier_variance(self):
        logger.info("    Started {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

        w = xavier_normal_init(1000, 1000, Rng(11), dtype=np.float64)
        assert abs(w.var() / (2.0 / 2000) - 1.0) < 0.1, "Failure in {}".format(inspect.stack()[0][3])
        assert abs(w.mean()) < 1e-3, "Failure in {}".format(inspect.stack()[0][3])

        logger.info("    Successfully completed {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

    def test_xavier_seeded_and_degenerate(self):
        logger.info("    Started {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

        assert np.array_equal(xavier_normal_init(4, 3, Rng(5)), xavier_normal_init(4, 3, Rng(5))), \
            "Failure in {}".format(inspect.stack()[0][3])
        single = xavier_normal_init(1, 1, Rng(5))
        assert single.shape == (1, 1) and np.isfinite(single).all(), "Failure in {}".format(inspect.stack()[0][3])
        assert xavier_normal_init(2, 2, Rng(5), dtype=np.float32).dtype == np.float32, \
            "Failure in {}".format(inspect.stack()[0][3])
        with pytest.raises(ShapeError):
            xavier_normal_init(0, 3, Rng(5))

        logger.info("    Successfully completed {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

    def test_resolve_dtype(self):
        assert resolve_dtype(32) == np.float32
        assert resolve_dtype(64) == np.float64
        with pytest.raises(ConfigError):
            resolve_dtype(16)


class ReluTests:

    def test_relu(self):
        logger.info("    Started {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

        assert np.array_equal(relu_forward(np.array([[1.0, -1.0]])), np.array([[1.0, 0.0]])), \
            "Failure in {}".format(inspect.stack()[0][3])
        grad = relu_backward(np.array([[2.0, -3.0]]), np.array([[5.0, 7.0]]))
        assert np.array_equal(grad, np.array([[5.0, 0.0]])), "Failure in {}".format(inspect.stack()[0][3])
        assert relu_backward(np.array([[0.0]]), np.array([[1.0]]))[0, 0] == 0.0, \
            "Failure in {}".format(inspect.stack()[0][3])
        with pytest.raises(ShapeError):
            relu_backward(np.zeros((1, 2)), np.zeros((2, 1)))

        logger.info("    Successfully completed {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))


if __name__ == "__main__":
    t = MatmulTests()
    t.test_mismatch_names_both_shapes()

#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# ======================================================================================================================== #
# Project  : DeepE Knowledge Graph Embedding                                                                               #
# Version  : 0.1.0                                                                                                         #
# File     : \conftest.py                                                                                                  #
# Language : Python 3.8.12                                                                                                 #
# ------------------------------------------------------------------------------------------------------------------------ #
# Author   : John James                                                                                                    #
# Company  : nov8.ai                                                                                                       #
# Email    : john.james.sf@gmail.com                                                                                       #
# URL      : https://github.com/john-james-sf/deepe                                                                        #
# ------------------------------------------------------------------------------------------------------------------------ #
# Created  : Tuesday, September 22nd 2026, 3:14:00 am                                                                      #
# Modified : Sunday, September 27th 2026, 6:11:00 am                                                                       #
# Modifier : John James (john.james.sf@gmail.com)                                                                          #
# ------------------------------------------------------------------------------------------------------------------------ #
# License  : BSD 3-clause "New" or "Revised" License                                                                       #
# Copyright: (c) 2026 nov8.ai                                                                                              #
# ======================================================================================================================== #
# %%
import os

import numpy as np
import pytest

from deepe.data.dataset import Dataset
from deepe.data.synthetic import make_rule_graph
# ------------------------------------------------------------------------------------------------------------------------ #
DATA_DIR_ENV = "DEEPE_DATA_DIR"


@pytest.fixture(scope="session")
def toy_dataset():
    return make_rule_graph()


@pytest.fixture
def tiny_dataset():
    train = [("a", "r", "b"), ("a", "r", "c"), ("b", "s", "c"), ("c", "s", "d"), ("d", "r", "a")]
    valid = [("b", "r", "d")]
    test = [("a", "s", "d"), ("e", "r", "a")]
    return Dataset.from_triples(train, valid, test, name="tiny")


@pytest.fixture(scope="session")
def benchmark_dir():
    path = os.environ.get(DATA_DIR_ENV)
    if not path or not os.path.isdir(path):
        pytest.skip("{} does not point at the benchmark datasets.".format(DATA_DIR_ENV))
    return path


@pytest.fixture
def rng64():
    return np.random.default_rng(20261017)

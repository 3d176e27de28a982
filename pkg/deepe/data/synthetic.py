#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# ======================================================================================================================== #
# Project  : DeepE Knowledge Graph Embedding                                                                               #
# Version  : 0.1.0                                                                                                         #
# File     : \synthetic.py                                                                                                 #
# Language : Python 3.8.12                                                                                                 #
# ------------------------------------------------------------------------------------------------------------------------ #
# Author   : John James                                                                                                    #
# Company  : nov8.ai                                                                                                       #
# Email    : john.james.sf@gmail.com                                                                                       #
# URL      : https://github.com/john-james-sf/deepe                                                                        #
# ------------------------------------------------------------------------------------------------------------------------ #
# Created  : Saturday, September 26th 2026, 9:42:00 am                                                                     #
# Modified : Thursday, October 1st 2026, 9:43:00 am                                                                        #
# Modifier : John James (john.james.sf@gmail.com)                                                                          #
# ------------------------------------------------------------------------------------------------------------------------ #
# License  : BSD 3-clause "New" or "Revised" License                                                                       #
# Copyright: (c) 2026 nov8.ai                                                                                              #
# ======================================================================================================================== #

"""Rule-generated toy knowledge graphs with known relation cardinalities."""
import logging
from typing import Sequence, Tuple

import numpy as np

from deepe.data.dataset import Dataset
from deepe.models.numkernel import Rng
from deepe.utils.exceptions import ConfigError
# ------------------------------------------------------------------------------------------------------------------------ #
logger = logging.getLogger(__name__)
# ------------------------------------------------------------------------------------------------------------------------ #
# (kind, fanout). "ring" links h to (h + offset + j * stride) mod n for j < fanout, which is
# 1-1 at fanout 1 and N-N above. "fan" gives each head its own block of fanout tails (1-N).
DEFAULT_PATTERNS: Tuple[Tuple[str, int], ...] = (("ring", 1), ("ring", 1), ("fan", 3), ("ring", 3), ("ring", 4))
ONE_TO_MANY_PATTERNS: Tuple[Tuple[str, int], ...] = (("ring", 1), ("fan", 2), ("fan", 3), ("fan", 4), ("fan", 5))
PATTERN_KINDS = ("ring", "fan")


def rule_triples(n_entities: int, patterns: Sequence[Tuple[str, int]]) -> np.ndarray:
    rows = []
    for k, (kind, fanout) in enumerate(patterns):
        if kind not in PATTERN_KINDS or fanout < 1:
            msg = "Pattern {} must be one of {} with fanout >= 1, got ({}, {}).".format(
                k, PATTERN_KINDS, kind, fanout)
            logger.error(msg)
            raise ConfigError(msg)
        offset = 1 + 3 * k
        if kind == "ring":
            stride = 1 + k % 7
            if fanout * stride >= n_entities:
                msg = "Ring pattern {} needs fanout * stride < {} entities.".format(k, n_entities)
                logger.error(msg)
                raise ConfigError(msg)
            for h in range(n_entities):
                rows.extend((h, k, (h + offset + j * stride) % n_entities) for j in range(fanout))
        else:
            for h in range(n_entities // fanout):
                rows.extend((h, k, (offset + h * fanout + j) % n_entities) for j in range(fanout))
    return np.asarray(rows, dtype=np.int64)


def make_rule_graph(n_entities: int = 50, patterns: Sequence[Tuple[str, int]] = DEFAULT_PATTERNS,
                    seed: int = 0, fractions: Tuple[float, float] = (0.8, 0.1),
                    name: str = "rule-graph") -> Dataset:
    """Builds a deterministic toy graph and splits its shuffled triples into train/valid/test.

    Arguments:
        n_entities: Number of entities, named e0 .. e{n-1}.
        patterns: One (kind, fanout) rule per relation, named r0 .. r{k-1}.
        seed: Seed of the shuffle.
        fractions: Train and valid fractions; the remainder is test.
    """
    if n_entities < 2:
        msg = "A rule graph needs at least 2 entities, got {}.".format(n_entities)
        logger.error(msg)
        raise ConfigError(msg)
    triples = rule_triples(n_entities, patterns)
    order = Rng(seed).permutation(len(triples))
    triples = triples[order]
    n_train = int(round(fractions[0] * len(triples)))
    n_valid = int(round(fractions[1] * len(triples)))
    entities = ["e{}".format(i) for i in range(n_entities)]
    relations = ["r{}".format(k) for k in range(len(patterns))]
    return Dataset(entities, relations, triples[:n_train], triples[n_train:n_train + n_valid],
                   triples[n_train + n_valid:], name=name)

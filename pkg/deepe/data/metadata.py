#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# ======================================================================================================================== #
# Project  : DeepE Knowledge Graph Embedding                                                                               #
# Version  : 0.1.0                                                                                                         #
# File     : \metadata.py                                                                                                  #
# Language : Python 3.8.12                                                                                                 #
# ------------------------------------------------------------------------------------------------------------------------ #
# Author   : John James                                                                                                    #
# Company  : nov8.ai                                                                                                       #
# Email    : john.james.sf@gmail.com                                                                                       #
# URL      : https://github.com/john-james-sf/deepe                                                                        #
# ------------------------------------------------------------------------------------------------------------------------ #
# Created  : Saturday, September 26th 2026, 9:42:00 am                                                                     #
# Modified : Friday, October 2nd 2026, 10:36:00 am                                                                         #
# Modifier : John James (john.james.sf@gmail.com)                                                                          #
# ------------------------------------------------------------------------------------------------------------------------ #
# License  : BSD 3-clause "New" or "Revised" License                                                                       #
# Copyright: (c) 2026 nov8.ai                                                                                              #
# ======================================================================================================================== #

"""Dataset statistics in the benchmark table layout and as key=value text."""
from dataclasses import asdict, dataclass
import logging
import os

import numpy as np
import pandas as pd

from deepe.data.dataset import Dataset
# ------------------------------------------------------------------------------------------------------------------------ #
logger = logging.getLogger(__name__)
# ------------------------------------------------------------------------------------------------------------------------ #
LOW_DEGREE = 10

# Published split statistics: (entities, relations, train, valid, test).
BENCHMARK_STATS = {
    "FB15k-237": (14541, 237, 272115, 17535, 20446),
    "WN18RR": (40943, 11, 86835, 3034, 3134),
    "YAGO3-10": (123182, 37, 1079040, 5000, 5000),
}
# The distributed FB15k-237 test file holds 20466 lines; the published count is 20446.
KNOWN_VARIANTS = {("FB15k-237", "n_test"): (20446, 20466)}


@dataclass
class DatasetStats:
    name: str
    n_entities: int
    n_relations: int
    n_train: int
    n_valid: int
    n_test: int
    mean_degree: float
    median_degree: float
    low_degree_fraction: float
    low_in_degree_fraction: float
    zero_degree_entities: int
    flagged_relations: int

    @classmethod
    def from_dataset(cls, dataset: Dataset, name: str = None) -> "DatasetStats":
        degree = dataset.entity_degree
        in_degree = dataset.entity_in_degree
        return cls(name=name or dataset.name,
                   n_entities=dataset.n_entities,
                   n_relations=dataset.n_relations,
                   n_train=len(dataset.train),
                   n_valid=len(dataset.valid),
                   n_test=len(dataset.test),
                   mean_degree=float(degree.mean()),
                   median_degree=float(np.median(degree)),
                   low_degree_fraction=float((degree < LOW_DEGREE).mean()),
                   low_in_degree_fraction=float((in_degree < LOW_DEGREE).mean()),
                   zero_degree_entities=int((degree == 0).sum()),
                   flagged_relations=len(dataset.flagged_relations))

    def to_frame(self) -> pd.DataFrame:
        """One column per dataset, one row per published statistic."""
        rows = {"|E|": self.n_entities, "|R|": self.n_relations, "#Train": self.n_train,
                "#Valid": self.n_valid, "#Test": self.n_test}
        frame = pd.DataFrame.from_dict(rows, orient="index", columns=[self.name])
        frame.index.name = "Dataset"
        return frame

    def to_text(self) -> str:
        lines = []
        for key, value in asdict(self).items():
            if isinstance(value, float):
                value = "{:.6g}".format(value)
            lines.append("{}={}".format(key, value))
        return "\n".join(lines) + "\n"

    def write(self, directory: str) -> None:
        os.makedirs(directory, exist_ok=True)
        self.to_frame().to_csv(os.path.join(directory, "stats.csv"))
        with open(os.path.join(directory, "stats.txt"), "w") as fp:
            fp.write(self.to_text())
        logger.info("Wrote dataset statistics for {} to {}.".format(self.name, directory))

    def mismatches(self, benchmark: str) -> dict:
        """Fields differing from the published statistics of ``benchmark``."""
        expected = dict(zip(["n_entities", "n_relations", "n_train", "n_valid", "n_test"],
                            BENCHMARK_STATS[benchmark]))
        found = {}
        for key, value in expected.items():
            actual = getattr(self, key)
            allowed = KNOWN_VARIANTS.get((benchmark, key), (value,))
            if actual not in allowed:
                found[key] = (value, actual)
        return found

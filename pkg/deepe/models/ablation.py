#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# ======================================================================================================================== #
# Project  : DeepE Knowledge Graph Embedding                                                                               #
# Version  : 0.1.0                                                                                                         #
# File     : \ablation.py                                                                                                  #
# Language : Python 3.8.12                                                                                                 #
# ------------------------------------------------------------------------------------------------------------------------ #
# Author   : John James                                                                                                    #
# Company  : nov8.ai                                                                                                       #
# Email    : john.james.sf@gmail.com                                                                                       #
# URL      : https://github.com/john-james-sf/deepe                                                                        #
# ------------------------------------------------------------------------------------------------------------------------ #
# Created  : Wednesday, September 30th 2026, 6:10:00 am                                                                    #
# Modified : Sunday, October 4th 2026, 12:42:00 am                                                                         #
# Modifier : John James (john.james.sf@gmail.com)                                                                          #
# ------------------------------------------------------------------------------------------------------------------------ #
# License  : BSD 3-clause "New" or "Revised" License                                                                       #
# Copyright: (c) 2026 nov8.ai                                                                                              #
# ======================================================================================================================== #

"""Architecture ablations, branch gating and the feature-network depth sweep."""
from dataclasses import replace
import logging
from typing import Dict, Iterable, Optional, Sequence, Tuple

import pandas as pd

from deepe.data.dataset import CATEGORIES, Dataset
from deepe.models.evaluate_model import EvalReport, evaluate
from deepe.models.model import GATES, DeepEModel, ModelConfig
from deepe.models.train_model import TrainConfig, TrainResult, train_loop
from deepe.utils.exceptions import ConfigError
# ------------------------------------------------------------------------------------------------------------------------ #
logger = logging.getLogger(__name__)
# ------------------------------------------------------------------------------------------------------------------------ #


def ablation_configs(base: ModelConfig, no_project: bool = False, no_identity_dropout: bool = False,
                     gate: Optional[str] = None, feature_block_kind: Optional[str] = None) -> Dict[str, ModelConfig]:
    """The baseline plus one variant per requested ablation."""
    variants = {"baseline": base}
    if no_project:
        variants["no_project"] = replace(base, resnet_blocks=0)
    if no_identity_dropout:
        variants["no_identity_dropout"] = replace(base, dropout=replace(base.dropout, p_identity=0.0))
    if gate is not None:
        if base.deepe_blocks != 1:
            msg = "Gate ablation needs a single-block feature network, got {} blocks.".format(base.deepe_blocks)
            logger.error(msg)
            raise ConfigError(msg)
        variants["gate_{}".format(gate)] = replace(base, gate=gate)
    if feature_block_kind is not None and feature_block_kind != base.feature_block_kind:
        variants["feature_{}".format(feature_block_kind)] = replace(base, feature_block_kind=feature_block_kind)
    return variants


def report_row(report: EvalReport) -> dict:
    """Overall metrics plus MRR per relation category (merged and per direction)."""
    overall = report.overall["both"]
    row = {"mr": overall.mr, "mrr": overall.mrr, "hits1": overall.hits1, "hits10": overall.hits10}
    ranks = report.ranks
    for category in CATEGORIES:
        subset = ranks.loc[ranks["category"] == category, "rank"]
        row["mrr_{}".format(category)] = float((1.0 / subset).mean()) if len(subset) else float("nan")
    for _, cell in report.by_category.iterrows():
        row["mrr_{}_{}".format(cell["category"], cell["direction"])] = cell["mrr"]
    return row


def train_and_evaluate(dataset: Dataset, model_config: ModelConfig, train_config: TrainConfig,
                       split: str = "test", ties: str = "average",
                       workers: Optional[int] = None) -> Tuple[TrainResult, EvalReport]:
    """Trains, restores the best state and evaluates it on ``split``."""
    result = train_loop(dataset, model_config, train_config, ties=ties, workers=workers)
    result.model.load_state_dict(result.best_state)
    return result, evaluate(result.model, dataset, split, ties=ties, workers=workers)


def run_ablation(dataset: Dataset, variants: Dict[str, ModelConfig], train_config: TrainConfig,
                 split: str = "test", ties: str = "average", workers: Optional[int] = None) -> pd.DataFrame:
    """Trains every variant under the same training settings and returns one comparison row each."""
    rows = []
    for name, config in variants.items():
        logger.info("Ablation variant {}.".format(name))
        result, report = train_and_evaluate(dataset, config, train_config, split, ties, workers)
        rows.append({"variant": name, "best_epoch": result.best_epoch, "epochs": len(result.log),
                     **report_row(report)})
    return pd.DataFrame(rows)


def evaluate_gates(model: DeepEModel, dataset: Dataset, split: str = "test", ties: str = "average",
                   workers: Optional[int] = None, gates: Iterable[str] = ("both", "linear", "nonlinear")
                   ) -> pd.DataFrame:
    """Evaluates a trained single-block model with each branch gate, without retraining."""
    if len(model.feature_blocks) != 1:
        msg = "Gate ablation needs a single-block feature network, got {} blocks.".format(len(model.feature_blocks))
        logger.error(msg)
        raise ConfigError(msg)
    original = GATES[model.config.gate]
    rows = []
    try:
        for gate in gates:
            model.set_gates(*GATES[gate])
            rows.append({"variant": "gate_{}".format(gate), **report_row(evaluate(model, dataset, split, ties,
                                                                                  workers))})
    finally:
        model.set_gates(*original)
    return pd.DataFrame(rows)


def depth_sweep(dataset: Dataset, base: ModelConfig, train_config: TrainConfig, depths: Sequence[int],
                kinds: Sequence[str] = ("deepe", "resnet"), split: str = "test", ties: str = "average",
                workers: Optional[int] = None) -> pd.DataFrame:
    """Feature-network depth against MRR for each block kind."""
    rows = []
    for kind in kinds:
        for depth in depths:
            config = replace(base, deepe_blocks=int(depth), feature_block_kind=kind, gate="both")
            logger.info("Depth sweep: {} blocks of kind {}.".format(depth, kind))
            result, report = train_and_evaluate(dataset, config, train_config, split, ties, workers)
            rows.append({"kind": kind, "depth": int(depth), "best_epoch": result.best_epoch, **report_row(report)})
    return pd.DataFrame(rows)

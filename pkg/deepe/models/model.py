#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# ======================================================================================================================== #
# Project  : DeepE Knowledge Graph Embedding                                                                               #
# Version  : 0.1.0                                                                                                         #
# File     : \model.py                                                                                                     #
# Language : Python 3.8.12                                                                                                 #
# ------------------------------------------------------------------------------------------------------------------------ #
# Author   : John James                                                                                                    #
# Company  : nov8.ai                                                                                                       #
# Email    : john.james.sf@gmail.com                                                                                       #
# URL      : https://github.com/john-james-sf/deepe                                                                        #
# ------------------------------------------------------------------------------------------------------------------------ #
# Created  : Thursday, September 24th 2026, 6:28:00 am                                                                     #
# Modified : Thursday, October 1st 2026, 9:43:00 am                                                                        #
# Modifier : John James (john.james.sf@gmail.com)                                                                          #
# ------------------------------------------------------------------------------------------------------------------------ #
# License  : BSD 3-clause "New" or "Revised" License                                                                       #
# Copyright: (c) 2026 nov8.ai                                                                                              #
# ======================================================================================================================== #

"""DeepE scorer: embeddings, feature extraction network, project network and dot-product score."""
from collections import OrderedDict
from dataclasses import asdict, dataclass, field
import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from deepe.models.layers import (BLOCK_KINDS, BatchNormLayer, DropoutLayer, Mode, Module, ResNetBlock,
                                 ResidualBlock)
from deepe.models.numkernel import ACTIVATIONS, Rng, matmul, resolve_dtype, xavier_normal_init
from deepe.utils.exceptions import (CheckpointError, ConfigError, DataFormatError, MissingCacheError,
                                    ParameterAuditError)
# ------------------------------------------------------------------------------------------------------------------------ #
logger = logging.getLogger(__name__)
# ------------------------------------------------------------------------------------------------------------------------ #
# gate name -> (linear branch on, non-linear branch on)
GATES = {"both": (True, True), "linear": (True, False), "nonlinear": (False, True)}
MAX_PROJECT_BLOCKS = 2


def _fail(msg: str, error=ConfigError):
    logger.error(msg)
    raise error(msg)


@dataclass
class DropoutSpec:
    """Dropout probabilities: input and feature FC layers, identity mapping, project FC layers."""

    p_input: float = 0.0
    p_fc: float = 0.0
    p_identity: float = 0.0
    p_resnet_fc: float = 0.0

    def __post_init__(self) -> None:
        for name, p in asdict(self).items():
            if not 0.0 <= float(p) < 1.0:
                _fail("Dropout {} must lie in [0, 1), got {}.".format(name, p))
        if self.p_identity >= 0.5:
            logger.warning("Identity dropout {} is large; values this high impede signal propagation "
                           "through stacked blocks.".format(self.p_identity))


@dataclass
class ModelConfig:
    dim: int = 200
    deepe_blocks: int = 1
    resnet_blocks: int = 1
    resnet_inner: int = 2
    deepe_inner: int = 2
    dropout: DropoutSpec = field(default_factory=DropoutSpec)
    seed: int = 0
    precision: int = 32
    batch_norm: bool = True
    feature_block_kind: str = "deepe"
    gate: str = "both"
    activation: str = "relu"

    def __post_init__(self) -> None:
        if isinstance(self.dropout, dict):
            self.dropout = DropoutSpec(**self.dropout)
        if self.dim < 1:
            _fail("dim must be >= 1, got {}.".format(self.dim))
        if self.deepe_blocks < 1:
            _fail("deepe_blocks must be >= 1 because the first block carries the 2d -> d projection, "
                  "got {}.".format(self.deepe_blocks))
        if not 0 <= self.resnet_blocks <= MAX_PROJECT_BLOCKS:
            _fail("resnet_blocks must lie in [0, {}], got {}.".format(MAX_PROJECT_BLOCKS, self.resnet_blocks))
        if self.resnet_inner < 1 or self.deepe_inner < 1:
            _fail("Inner layer counts must be >= 1, got deepe_inner={}, resnet_inner={}.".format(
                self.deepe_inner, self.resnet_inner))
        if self.feature_block_kind not in BLOCK_KINDS:
            _fail("feature_block_kind must be one of {}, got {}.".format(sorted(BLOCK_KINDS), self.feature_block_kind))
        if self.gate not in GATES:
            _fail("gate must be one of {}, got {}.".format(sorted(GATES), self.gate))
        if self.gate != "both" and self.deepe_blocks != 1:
            _fail("Gating is defined for single-block feature networks, got {} blocks.".format(self.deepe_blocks))
        if self.activation not in ACTIVATIONS:
            _fail("activation must be one of {}, got {}.".format(sorted(ACTIVATIONS), self.activation))
        if self.seed < 0:
            _fail("seed must be non-negative, got {}.".format(self.seed))
        resolve_dtype(self.precision)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, values: dict) -> "ModelConfig":
        return cls(**values)


# ------------------------------------------------------------------------------------------------------------------------ #


@dataclass
class ParameterAudit:
    """Learnable scalar counts, enumerated and in closed form."""

    embedding_params: int
    block_params: int
    total: int
    closed_form: int
    per_group: Dict[str, int]

    def to_dict(self) -> dict:
        return asdict(self)


# ------------------------------------------------------------------------------------------------------------------------ #


class DeepEModel(Module):
    """Scores (head, relation) queries against every entity.

    v = feature network applied to dropout(BN(h || r)); t' = project network applied to every
    entity embedding; score(h, r, e) = v . t'_e. Reverse relations occupy rows
    n_relations .. 2 n_relations - 1 of the relation table.

    Arguments:
        config: Model hyperparameters.
        n_entities: Entity vocabulary size.
        n_relations: Original (non-reversed) relation vocabulary size.
    """

    def __init__(self, config: ModelConfig, n_entities: int, n_relations: int) -> None:
        super(DeepEModel, self).__init__()
        if n_entities < 1 or n_relations < 1:
            _fail("Model needs at least one entity and one relation, got {} and {}.".format(n_entities, n_relations))
        self.config = config
        self.n_entities = n_entities
        self.n_relations = n_relations
        self.dtype = resolve_dtype(config.precision)
        d = config.dim
        spec = config.dropout
        rng = Rng(config.seed)

        self.parameters["entity_emb"] = xavier_normal_init(n_entities, d, rng.split(0), self.dtype)
        self.parameters["relation_emb"] = xavier_normal_init(2 * n_relations, d, rng.split(1), self.dtype)
        self.gradients = {k: np.zeros_like(v) for k, v in self.parameters.items()}

        self.input_bn: Optional[BatchNormLayer] = BatchNormLayer(2 * d, self.dtype) if config.batch_norm else None
        self.input_dropout = DropoutLayer(spec.p_input, rng.split(2))
        block_cls = BLOCK_KINDS[config.feature_block_kind]
        self.feature_blocks: List[ResidualBlock] = [
            block_cls(2 * d if i == 0 else d, d, config.deepe_inner, rng.split(3, i), self.dtype,
                      p_fc=spec.p_fc, p_identity=spec.p_identity, batch_norm=config.batch_norm,
                      activation=config.activation)
            for i in range(config.deepe_blocks)]
        self.project_blocks: List[ResidualBlock] = [
            ResNetBlock(d, d, config.resnet_inner, rng.split(4, j), self.dtype,
                        p_fc=spec.p_resnet_fc, p_identity=0.0, batch_norm=config.batch_norm,
                        activation=config.activation)
            for j in range(config.resnet_blocks)]
        self.set_gates(*GATES[config.gate])

    @property
    def entity_emb(self) -> np.ndarray:
        return self.parameters["entity_emb"]

    @property
    def relation_emb(self) -> np.ndarray:
        return self.parameters["relation_emb"]

    def named_children(self):
        children = [("input_bn", self.input_bn)] if self.input_bn is not None else []
        children.append(("input_dropout", self.input_dropout))
        children.extend(("feature.{}".format(i), block) for i, block in enumerate(self.feature_blocks))
        children.extend(("project.{}".format(j), block) for j, block in enumerate(self.project_blocks))
        return children

    def set_gates(self, linear: bool, nonlinear: bool) -> None:
        """Enables or disables the identity and non-linear branches of every feature block."""
        for block in self.feature_blocks:
            block.gate_linear = linear
            block.gate_nonlinear = nonlinear

    # -------------------------------------------------------------------------------------------------------------------- #
    def _check_ids(self, ids, bound: int, kind: str) -> np.ndarray:
        ids = np.asarray(ids, dtype=np.int64).reshape(-1)
        if ids.size and (ids.min() < 0 or ids.max() >= bound):
            _fail("{} id out of range [0, {}): min {}, max {}.".format(kind, bound, ids.min(), ids.max()),
                  DataFormatError)
        return ids

    def feature_forward(self, heads, relations, mode: Mode, cache: bool = True) -> np.ndarray:
        """Returns v, one feature row per (head, relation) query."""
        mode = self._check_mode(mode)
        heads = self._check_ids(heads, self.n_entities, "Entity")
        relations = self._check_ids(relations, 2 * self.n_relations, "Relation")
        if heads.shape != relations.shape:
            _fail("Got {} heads but {} relations.".format(heads.size, relations.size), DataFormatError)
        x = np.concatenate([self.entity_emb[heads], self.relation_emb[relations]], axis=1)
        if self.input_bn is not None:
            x = self.input_bn.forward(x, mode, cache)
        x = self.input_dropout.forward(x, mode, cache)
        for block in self.feature_blocks:
            x = block.forward(x, mode, cache)
        if cache:
            self._cache = {"heads": heads, "relations": relations}
        return x

    def project_forward(self, mode: Mode, cache: bool = True) -> np.ndarray:
        """Returns t' for every entity. Without project blocks this is the entity table itself."""
        mode = self._check_mode(mode)
        t = self.entity_emb
        for block in self.project_blocks:
            t = block.forward(t, mode, cache)
        return t

    def score_all(self, heads, relations, mode: Mode, cache: bool = True,
                  projected: Optional[np.ndarray] = None) -> np.ndarray:
        """Returns a batch x n_entities matrix of dot(v_b, t'_e).

        ``projected`` lets evaluation reuse one t' for every batch of a frozen model.
        """
        v = self.feature_forward(heads, relations, mode, cache)
        t = projected if projected is not None else self.project_forward(mode, cache)
        scores = matmul(v, t.T)
        if cache:
            self._cache.update({"v": v, "t": t, "projected_given": projected is not None})
        return scores

    def backward(self, d_scores: np.ndarray) -> None:
        """Accumulates exact gradients of every parameter from the upstream score gradient."""
        cache = self._require_cache()
        if "v" not in cache:
            _fail("Model backward needs a cached score_all pass.", MissingCacheError)
        if cache["projected_given"]:
            _fail("Model backward cannot run through a precomputed projection.", MissingCacheError)
        v, t = cache["v"], cache["t"]
        heads, relations = cache["heads"], cache["relations"]
        d = self.config.dim

        dv = matmul(d_scores, t)
        dt = matmul(d_scores.T, v)
        for block in reversed(self.project_blocks):
            dt = block.backward(dt)
        self.gradients["entity_emb"] += dt

        for block in reversed(self.feature_blocks):
            dv = block.backward(dv)
        dv = self.input_dropout.backward(dv)
        if self.input_bn is not None:
            dv = self.input_bn.backward(dv)
        np.add.at(self.gradients["entity_emb"], heads, dv[:, :d])
        np.add.at(self.gradients["relation_emb"], relations, dv[:, d:])

    # -------------------------------------------------------------------------------------------------------------------- #
    def parameter_list(self) -> List[Tuple[str, np.ndarray, np.ndarray]]:
        """Flattened (name, parameter, gradient) triples for optimizer traversal."""
        return list(self.named_parameters())

    def state_dict(self) -> "OrderedDict[str, np.ndarray]":
        state = OrderedDict((name, param.copy()) for name, param, _ in self.named_parameters())
        state.update((name, buffer.copy()) for name, buffer in self.named_buffers())
        return state

    def load_state_dict(self, state: Dict[str, np.ndarray]) -> None:
        """Copies arrays into the existing parameters in place, so optimizer references stay valid."""
        targets = OrderedDict((name, param) for name, param, _ in self.named_parameters())
        targets.update(self.named_buffers())
        missing = sorted(set(targets) - set(state))
        unexpected = sorted(set(state) - set(targets))
        if missing or unexpected:
            _fail("State does not match the model. Missing: {}. Unexpected: {}.".format(missing, unexpected),
                  CheckpointError)
        for name, target in targets.items():
            value = np.asarray(state[name])
            if value.shape != target.shape:
                _fail("Tensor {} has shape {}, model expects {}.".format(name, value.shape, target.shape),
                      CheckpointError)
            np.copyto(target, value.astype(target.dtype, copy=False))

    # -------------------------------------------------------------------------------------------------------------------- #
    def closed_form_parameter_count(self) -> int:
        """|E| d + 2|R| d plus every block term, biases and BN scale/shift included."""
        c = self.config
        d = c.dim
        bn = (lambda width: 2 * width) if c.batch_norm else (lambda width: 0)

        def linear(fan_in: int, fan_out: int) -> int:
            return fan_out * fan_in + fan_out

        total = self.n_entities * d + 2 * self.n_relations * d + bn(2 * d)
        for i in range(c.deepe_blocks):
            fan_in = 2 * d if i == 0 else d
            total += linear(fan_in, d) if fan_in != d else 0
            total += linear(fan_in, d) + (c.deepe_inner - 1) * linear(d, d) + c.deepe_inner * bn(d)
        total += c.resnet_blocks * c.resnet_inner * (linear(d, d) + bn(d))
        return total

    def parameter_count_audit(self) -> ParameterAudit:
        per_group: Dict[str, int] = {}
        for name, param, _ in self.named_parameters():
            parts = name.split(".")
            group = ".".join(parts[:2]) if parts[0] in ("feature", "project") else parts[0]
            per_group[group] = per_group.get(group, 0) + int(param.size)
        total = sum(per_group.values())
        embedding = per_group.get("entity_emb", 0) + per_group.get("relation_emb", 0)
        closed_form = self.closed_form_parameter_count()
        if closed_form != total:
            _fail("Enumerated {} learnable scalars but the closed form gives {}.".format(total, closed_form),
                  ParameterAuditError)
        return ParameterAudit(embedding_params=embedding, block_params=total - embedding, total=total,
                              closed_form=closed_form, per_group=per_group)

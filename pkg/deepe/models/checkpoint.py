#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# ======================================================================================================================== #
# Project  : DeepE Knowledge Graph Embedding                                                                               #
# Version  : 0.1.0                                                                                                         #
# File     : \checkpoint.py                                                                                                #
# Language : Python 3.8.12                                                                                                 #
# ------------------------------------------------------------------------------------------------------------------------ #
# Author   : John James                                                                                                    #
# Company  : nov8.ai                                                                                                       #
# Email    : john.james.sf@gmail.com                                                                                       #
# URL      : https://github.com/john-james-sf/deepe                                                                        #
# ------------------------------------------------------------------------------------------------------------------------ #
# Created  : Tuesday, September 29th 2026, 4:33:00 am                                                                      #
# Modified : Monday, October 5th 2026, 1:35:00 am                                                                          #
# Modifier : John James (john.james.sf@gmail.com)                                                                          #
# ------------------------------------------------------------------------------------------------------------------------ #
# License  : BSD 3-clause "New" or "Revised" License                                                                       #
# Copyright: (c) 2026 nov8.ai                                                                                              #
# ======================================================================================================================== #

"""Single-archive checkpoints.

Layout of the ``.npz`` archive:

- ``__meta__``: UTF-8 JSON as a uint8 array with ``format_version``, ``config`` (ModelConfig),
  ``n_entities``, ``n_relations``, ``entity_vocab_hash``, ``relation_vocab_hash``, ``tensors``
  (name, shape, dtype per tensor, in write order), ``digest`` and ``extra``.
- ``param/<name>``: every named parameter and batch-norm running statistic, little-endian.
  Names follow ``entity_emb``, ``relation_emb``, ``input_bn.gamma``, ``feature.<i>.fc<k>.weight``,
  ``feature.<i>.ws.bias``, ``project.<j>.bn<k>.running_var`` and so on.
- ``optim/<name>``: optional Adam state (``adam.step``, ``adam.m.<param>``, ``adam.v.<param>``).

``digest`` is the sha256 over name, shape and raw bytes of every tensor in sorted name order.
"""
from dataclasses import dataclass, field
import hashlib
import json
import logging
import os
from typing import Dict, Optional
import zipfile

import numpy as np

from deepe.models.model import DeepEModel, ModelConfig
from deepe.models.train_model import AdamState
from deepe.utils.exceptions import CheckpointError, VocabMismatchError
# ------------------------------------------------------------------------------------------------------------------------ #
logger = logging.getLogger(__name__)
# ------------------------------------------------------------------------------------------------------------------------ #
FORMAT_VERSION = 1
META_KEY = "__meta__"
PARAM_PREFIX = "param/"
OPTIM_PREFIX = "optim/"


def _fail(msg: str, error=CheckpointError):
    logger.error(msg)
    raise error(msg)


def _little_endian(array: np.ndarray) -> np.ndarray:
    array = np.ascontiguousarray(array)
    return array.astype(array.dtype.newbyteorder("<"), copy=False)


def tensor_digest(tensors: Dict[str, np.ndarray]) -> str:
    digest = hashlib.sha256()
    for name in sorted(tensors):
        array = _little_endian(tensors[name])
        digest.update(name.encode("utf-8"))
        digest.update(repr(tuple(array.shape)).encode("ascii"))
        digest.update(array.tobytes())
    return digest.hexdigest()


@dataclass
class Checkpoint:
    model: DeepEModel
    config: ModelConfig
    entity_vocab_hash: str
    relation_vocab_hash: str
    optimizer_state: Optional[AdamState] = None
    extra: dict = field(default_factory=dict)

    def check_vocab(self, dataset) -> None:
        """Raises VocabMismatchError unless the dataset carries the checkpoint's vocabularies."""
        if (dataset.entity_vocab_hash, dataset.relation_vocab_hash) != (self.entity_vocab_hash,
                                                                        self.relation_vocab_hash):
            _fail("Checkpoint vocabularies (entity {}, relation {}) do not match the data (entity {}, "
                  "relation {}).".format(self.entity_vocab_hash[:12], self.relation_vocab_hash[:12],
                                         dataset.entity_vocab_hash[:12], dataset.relation_vocab_hash[:12]),
                  VocabMismatchError)


def save_checkpoint(path: str, model: DeepEModel, entity_vocab_hash: str, relation_vocab_hash: str,
                    state: Optional[Dict[str, np.ndarray]] = None, optimizer_state: Optional[AdamState] = None,
                    extra: Optional[dict] = None) -> str:
    """Writes ``state`` (default: the model's current state) with its metadata to ``path``."""
    state = state if state is not None else model.state_dict()
    tensors = {PARAM_PREFIX + name: _little_endian(array) for name, array in state.items()}
    if optimizer_state is not None:
        tensors.update((OPTIM_PREFIX + name, _little_endian(a)) for name, a in optimizer_state.to_arrays().items())
    meta = {
        "format_version": FORMAT_VERSION,
        "config": model.config.to_dict(),
        "n_entities": model.n_entities,
        "n_relations": model.n_relations,
        "entity_vocab_hash": entity_vocab_hash,
        "relation_vocab_hash": relation_vocab_hash,
        "tensors": [{"name": n, "shape": list(a.shape), "dtype": a.dtype.str} for n, a in tensors.items()],
        "digest": tensor_digest(tensors),
        "extra": extra or {},
    }
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    arrays = dict(tensors)
    arrays[META_KEY] = np.frombuffer(json.dumps(meta, sort_keys=True).encode("utf-8"), dtype=np.uint8)
    with open(path, "wb") as fp:
        np.savez(fp, **arrays)
    logger.info("Saved checkpoint with {} tensors to {}.".format(len(tensors), path))
    return path


def load_checkpoint(path: str) -> Checkpoint:
    """Reads and verifies a checkpoint, returning a model in eval mode."""
    try:
        with np.load(path, allow_pickle=False) as archive:
            arrays = {name: archive[name] for name in archive.files}
    except (OSError, ValueError, EOFError, zipfile.BadZipFile, KeyError) as e:
        _fail("Cannot read checkpoint {}: {}".format(path, e))
    if META_KEY not in arrays:
        _fail("Checkpoint {} has no metadata record.".format(path))
    try:
        meta = json.loads(arrays.pop(META_KEY).tobytes().decode("utf-8"))
    except (UnicodeDecodeError, ValueError) as e:
        _fail("Checkpoint {} has unreadable metadata: {}".format(path, e))
    if meta.get("format_version") != FORMAT_VERSION:
        _fail("Checkpoint {} has format version {}, expected {}.".format(
            path, meta.get("format_version"), FORMAT_VERSION))
    expected = [t["name"] for t in meta.get("tensors", [])]
    if sorted(expected) != sorted(arrays):
        _fail("Checkpoint {} tensors do not match its metadata.".format(path))
    if tensor_digest(arrays) != meta.get("digest"):
        _fail("Checkpoint {} fails its digest check.".format(path))

    config = ModelConfig.from_dict(meta["config"])
    model = DeepEModel(config, meta["n_entities"], meta["n_relations"])
    model.load_state_dict({k[len(PARAM_PREFIX):]: a for k, a in arrays.items() if k.startswith(PARAM_PREFIX)})
    model.set_mode("eval")
    optim = {k[len(OPTIM_PREFIX):]: a for k, a in arrays.items() if k.startswith(OPTIM_PREFIX)}
    optimizer_state = AdamState.from_arrays(optim) if optim else None
    logger.info("Loaded checkpoint {} ({} tensors).".format(path, len(arrays)))
    return Checkpoint(model=model, config=config, entity_vocab_hash=meta["entity_vocab_hash"],
                      relation_vocab_hash=meta["relation_vocab_hash"], optimizer_state=optimizer_state,
                      extra=meta.get("extra", {}))

#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# ======================================================================================================================== #
# Project  : DeepE Knowledge Graph Embedding                                                                               #
# Version  : 0.1.0                                                                                                         #
# File     : \dataset.py                                                                                                   #
# Language : Python 3.8.12                                                                                                 #
# ------------------------------------------------------------------------------------------------------------------------ #
# Author   : John James                                                                                                    #
# Company  : nov8.ai                                                                                                       #
# Email    : john.james.sf@gmail.com                                                                                       #
# URL      : https://github.com/john-james-sf/deepe                                                                        #
# ------------------------------------------------------------------------------------------------------------------------ #
# Created  : Friday, September 25th 2026, 8:05:00 am                                                                       #
# Modified : Tuesday, September 29th 2026, 7:57:00 am                                                                      #
# Modifier : John James (john.james.sf@gmail.com)                                                                          #
# ------------------------------------------------------------------------------------------------------------------------ #
# License  : BSD 3-clause "New" or "Revised" License                                                                       #
# Copyright: (c) 2026 nov8.ai                                                                                              #
# ======================================================================================================================== #

"""Triple ingestion, vocabularies, reverse-relation augmentation and the indices built over them."""
import hashlib
import os
import logging
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

import numpy as np
import pandas as pd

from deepe.utils.exceptions import DataFormatError
# ------------------------------------------------------------------------------------------------------------------------ #
logger = logging.getLogger(__name__)
# ------------------------------------------------------------------------------------------------------------------------ #
SPLITS = ("train", "valid", "test")
CATEGORIES = ("1-1", "1-N", "N-1", "N-N")
CATEGORY_THRESHOLD = 1.5
# a reverse relation swaps the roles of head and tail
TRANSPOSED = {"1-1": "1-1", "1-N": "N-1", "N-1": "1-N", "N-N": "N-N"}
COLUMNS = ["head", "relation", "tail"]


class Triple(NamedTuple):
    head: int
    relation: int
    tail: int


def _fail(msg: str):
    logger.error(msg)
    raise DataFormatError(msg)


# ------------------------------------------------------------------------------------------------------------------------ #
def read_triples(path: str) -> List[Tuple[str, str, str]]:
    """Reads UTF-8 head<TAB>relation<TAB>tail lines. Blank lines are skipped."""
    triples = []
    with open(path, "rb") as fp:
        for lineno, raw in enumerate(fp, start=1):
            try:
                line = raw.decode("utf-8").rstrip("\r\n")
            except UnicodeDecodeError as e:
                _fail("{}:{}: not valid UTF-8 ({}).".format(path, lineno, e.reason))
            if not line.strip():
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                _fail("{}:{}: expected 3 tab-separated fields, got {}.".format(path, lineno, len(fields)))
            if not all(fields):
                _fail("{}:{}: empty field in {!r}.".format(path, lineno, line))
            triples.append((fields[0], fields[1], fields[2]))
    logger.debug("Read {} triples from {}.".format(len(triples), path))
    return triples


def augment(triples: np.ndarray, n_relations: int) -> np.ndarray:
    """Appends (t, r + n_relations, h) for every (h, r, t). Originals come first."""
    reverse = np.stack([triples[:, 2], triples[:, 1] + n_relations, triples[:, 0]], axis=1)
    return np.concatenate([triples, reverse], axis=0)


def reverse_relation(relation: int, n_relations: int) -> int:
    """Maps r to r' and r' back to r."""
    return relation + n_relations if relation < n_relations else relation - n_relations


# ------------------------------------------------------------------------------------------------------------------------ #
def build_filter_index(triples: Iterable[np.ndarray], n_relations: int) -> Dict[Tuple[int, int], np.ndarray]:
    """Maps every augmented (head, relation) to the sorted array of its true tails over all given splits."""
    frames = [pd.DataFrame(augment(t, n_relations), columns=COLUMNS) for t in triples if len(t)]
    if not frames:
        return {}
    frame = pd.concat(frames, ignore_index=True)
    grouped = frame.groupby(["head", "relation"], sort=True)["tail"].apply(lambda s: np.unique(s.to_numpy()))
    return {(int(h), int(r)): tails for (h, r), tails in grouped.items()}


def relation_cardinality(train: np.ndarray, fallback: np.ndarray, n_relations: int,
                         threshold: float = CATEGORY_THRESHOLD) -> pd.DataFrame:
    """Tails-per-head and heads-per-tail per original relation over distinct (head, tail) pairs.

    Relations absent from ``train`` are measured on ``fallback`` (valid and test) and flagged.
    """
    def measure(triples: np.ndarray) -> pd.DataFrame:
        pairs = pd.DataFrame(triples, columns=COLUMNS).drop_duplicates()
        grouped = pairs.groupby("relation")
        n = grouped.size()
        return pd.DataFrame({"tph": n / grouped["head"].nunique(), "hpt": n / grouped["tail"].nunique()})

    stats = measure(train) if len(train) else pd.DataFrame(columns=["tph", "hpt"])
    stats["flagged"] = False
    missing = sorted(set(range(n_relations)) - set(int(r) for r in stats.index))
    if missing:
        logger.warning("Relations {} do not occur in train; categorizing them from valid/test.".format(missing))
        extra = measure(fallback[np.isin(fallback[:, 1], missing)]) if len(fallback) else pd.DataFrame()
        extra["flagged"] = True
        stats = pd.concat([stats, extra])
    stats = stats.reindex(range(n_relations))
    stats["flagged"] = stats["flagged"].fillna(True).astype(bool)
    stats[["tph", "hpt"]] = stats[["tph", "hpt"]].astype(float)
    stats.index.name = "relation"

    many_tails = stats["tph"] >= threshold
    many_heads = stats["hpt"] >= threshold
    stats["category"] = np.select([~many_tails & ~many_heads, many_tails & ~many_heads,
                                   ~many_tails & many_heads], ["1-1", "1-N", "N-1"], default="N-N")
    return stats


def categorize_relations(cardinality: pd.DataFrame, n_relations: int) -> Dict[int, str]:
    """Category of every relation id, reverse relations receiving the transposed category."""
    categories = {}
    for relation, category in cardinality["category"].items():
        categories[int(relation)] = category
        categories[int(relation) + n_relations] = TRANSPOSED[category]
    return categories


def entity_degrees(train: np.ndarray, n_entities: int) -> np.ndarray:
    """Original-direction train triples incident to each entity. Self-loops count twice."""
    return np.bincount(np.concatenate([train[:, 0], train[:, 2]]), minlength=n_entities).astype(np.int64)


def entity_in_degrees(train: np.ndarray, n_entities: int) -> np.ndarray:
    return np.bincount(train[:, 2], minlength=n_entities).astype(np.int64)


def vocab_hash(tokens: Sequence[str]) -> str:
    digest = hashlib.sha256()
    for token in tokens:
        digest.update(token.encode("utf-8"))
        digest.update(b"\n")
    return digest.hexdigest()


# ------------------------------------------------------------------------------------------------------------------------ #


class Dataset:
    """Vocabularies, splits and every index derived from them. Immutable once built.

    Arguments:
        entities: Entity names in id order.
        relations: Original relation names in id order.
        train, valid, test: Integer (n, 3) arrays of original-direction triples.
        name: Optional label used in reports.
    """

    def __init__(self, entities: Sequence[str], relations: Sequence[str], train: np.ndarray,
                 valid: np.ndarray, test: np.ndarray, name: str = "dataset") -> None:
        self.name = name
        self.entities = list(entities)
        self.relations = list(relations)
        self.entity_vocab = {e: i for i, e in enumerate(self.entities)}
        self.relation_vocab = {r: i for i, r in enumerate(self.relations)}
        if len(self.entity_vocab) != len(self.entities) or len(self.relation_vocab) != len(self.relations):
            _fail("Vocabularies contain duplicate names.")
        self.splits = {}
        for split, triples in zip(SPLITS, (train, valid, test)):
            triples = np.array(triples, dtype=np.int64).reshape(-1, 3)
            self._check_ids(split, triples)
            triples.setflags(write=False)
            self.splits[split] = triples

        self.train_augmented = augment(self.train, self.n_relations)
        self.filter_index = build_filter_index(self.splits.values(), self.n_relations)
        self.train_index = build_filter_index([self.train], self.n_relations)
        self.relation_cardinality = relation_cardinality(
            self.train, np.concatenate([self.valid, self.test]), self.n_relations)
        self.relation_categories = categorize_relations(self.relation_cardinality, self.n_relations)
        self.flagged_relations: Set[int] = set(
            int(r) for r in self.relation_cardinality.index[self.relation_cardinality["flagged"]])
        self.entity_degree = entity_degrees(self.train, self.n_entities)
        self.entity_in_degree = entity_in_degrees(self.train, self.n_entities)
        self.entity_vocab_hash = vocab_hash(self.entities)
        self.relation_vocab_hash = vocab_hash(self.relations)
        logger.info("Loaded {}: {} entities, {} relations, train/valid/test = {}/{}/{}.".format(
            name, self.n_entities, self.n_relations, len(self.train), len(self.valid), len(self.test)))

    def _check_ids(self, split: str, triples: np.ndarray) -> None:
        if not len(triples):
            return
        for column, bound, kind in ((0, self.n_entities, "Head"), (1, self.n_relations, "Relation"),
                                    (2, self.n_entities, "Tail")):
            ids = triples[:, column]
            if ids.min() < 0 or ids.max() >= bound:
                _fail("{} id out of range [0, {}) in {} split.".format(kind, bound, split))

    @property
    def n_entities(self) -> int:
        return len(self.entities)

    @property
    def n_relations(self) -> int:
        return len(self.relations)

    @property
    def augmented_relation_count(self) -> int:
        return 2 * self.n_relations

    @property
    def train(self) -> np.ndarray:
        return self.splits["train"]

    @property
    def valid(self) -> np.ndarray:
        return self.splits["valid"]

    @property
    def test(self) -> np.ndarray:
        return self.splits["test"]

    def split(self, name: str) -> np.ndarray:
        if name not in self.splits:
            _fail("Unknown split {}. Expected one of {}.".format(name, list(SPLITS)))
        return self.splits[name]

    def queries(self, name: str) -> np.ndarray:
        """Tail-prediction queries of a split: originals (tail direction) then reverses (head direction)."""
        return augment(self.split(name), self.n_relations)

    def true_tails(self, head: int, relation: int) -> np.ndarray:
        return self.filter_index.get((int(head), int(relation)), np.empty(0, dtype=np.int64))

    def triples(self, name: str) -> List[Triple]:
        return [Triple(*map(int, row)) for row in self.split(name)]

    # -------------------------------------------------------------------------------------------------------------------- #
    @classmethod
    def from_triples(cls, train: Iterable[Tuple[str, str, str]], valid: Iterable[Tuple[str, str, str]],
                     test: Iterable[Tuple[str, str, str]], name: str = "dataset") -> "Dataset":
        """Builds vocabularies by first appearance over train, valid, test (head before tail)."""
        entity_vocab: Dict[str, int] = {}
        relation_vocab: Dict[str, int] = {}
        encoded = []
        for split in (train, valid, test):
            rows = []
            for h, r, t in split:
                rows.append((entity_vocab.setdefault(h, len(entity_vocab)),
                             relation_vocab.setdefault(r, len(relation_vocab)),
                             entity_vocab.setdefault(t, len(entity_vocab))))
            encoded.append(np.asarray(rows, dtype=np.int64).reshape(-1, 3))
        return cls(list(entity_vocab), list(relation_vocab), *encoded, name=name)


def load_tsv(train_path: str, valid_path: str, test_path: str, name: Optional[str] = None) -> Dataset:
    """Loads the three split files into a Dataset."""
    splits = [read_triples(path) for path in (train_path, valid_path, test_path)]
    return Dataset.from_triples(*splits, name=name or "dataset")


def write_tsv(dataset: Dataset, directory: str) -> dict:
    """Writes train.txt, valid.txt and test.txt with entity and relation names. Returns the paths."""
    os.makedirs(directory, exist_ok=True)
    paths = {}
    for split in SPLITS:
        path = os.path.join(directory, "{}.txt".format(split))
        with open(path, "w", encoding="utf-8") as fp:
            for h, r, t in dataset.split(split):
                fp.write("{}\t{}\t{}\n".format(dataset.entities[h], dataset.relations[r], dataset.entities[t]))
        paths[split] = path
    return paths

#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# ======================================================================================================================== #
# Project  : DeepE Knowledge Graph Embedding                                                                               #
# Version  : 0.1.0                                                                                                         #
# File     : \evaluate_model.py                                                                                            #
# Language : Python 3.8.12                                                                                                 #
# ------------------------------------------------------------------------------------------------------------------------ #
# Author   : John James                                                                                                    #
# Company  : nov8.ai                                                                                                       #
# Email    : john.james.sf@gmail.com                                                                                       #
# URL      : https://github.com/john-james-sf/deepe                                                                        #
# ------------------------------------------------------------------------------------------------------------------------ #
# Created  : Monday, September 28th 2026, 2:56:00 am                                                                       #
# Modified : Saturday, October 3rd 2026, 11:29:00 am                                                                       #
# Modifier : John James (john.james.sf@gmail.com)                                                                          #
# ------------------------------------------------------------------------------------------------------------------------ #
# License  : BSD 3-clause "New" or "Revised" License                                                                       #
# Copyright: (c) 2026 nov8.ai                                                                                              #
# ======================================================================================================================== #

"""Filtered ranking evaluation with relation-category and entity-degree breakdowns."""
from dataclasses import dataclass, field
import logging
import os
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from deepe.data.dataset import CATEGORIES, Dataset
from deepe.models.layers import Mode
from deepe.process.parallel import map_ordered
from deepe.utils.exceptions import ConfigError, DataFormatError, ReportInvariantError
# ------------------------------------------------------------------------------------------------------------------------ #
logger = logging.getLogger(__name__)
# ------------------------------------------------------------------------------------------------------------------------ #
TIES = ("average", "pessimistic", "optimistic")
DIRECTIONS = ("head", "tail")
DEGREE_BUCKETS = ("1", "2", "3-5", "6-10", "11-100", ">100")
DEGREE_EDGES = (-np.inf, 1, 2, 5, 10, 100, np.inf)
METRIC_COLUMNS = ["count", "mr", "mrr", "hits1", "hits3", "hits10"]
EVAL_BATCH_SIZE = 256
FLOAT_FORMAT = "%.6g"

ScoreFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


def _fail(msg: str, error=DataFormatError):
    logger.error(msg)
    raise error(msg)


def _tie_weight(ties: str) -> float:
    if ties not in TIES:
        _fail("Unknown tie policy {}. Expected one of {}.".format(ties, TIES), ConfigError)
    return {"average": 0.5, "pessimistic": 1.0, "optimistic": 0.0}[ties]


def filtered_rank(scores: np.ndarray, gold: int, filter_set: Sequence[int], ties: str = "average") -> float:
    """Rank of ``gold`` among all entities except the other known-true answers.

    rank = 1 + #{score > gold score} + w * #{score == gold score, candidate != gold}, where w is
    1/2 for average ties, 1 for pessimistic and 0 for optimistic.
    """
    scores = np.asarray(scores).reshape(-1)
    n = scores.shape[0]
    if not 0 <= int(gold) < n:
        _fail("Gold id {} out of range [0, {}).".format(gold, n))
    keep = np.ones(n, dtype=bool)
    keep[np.asarray(filter_set, dtype=np.int64)] = False
    keep[gold] = True
    target = scores[gold]
    higher = int(np.count_nonzero(scores[keep] > target))
    equal = int(np.count_nonzero(scores[keep] == target)) - 1
    return 1.0 + higher + _tie_weight(ties) * equal


def batch_ranks(scores: np.ndarray, gold: np.ndarray, filters: Optional[Sequence[np.ndarray]] = None,
                ties: str = "average") -> np.ndarray:
    """Row-wise ranks of a batch x n_entities score matrix. Raw ranks when ``filters`` is None."""
    batch, n = scores.shape
    rows = np.arange(batch)
    gold = np.asarray(gold, dtype=np.int64)
    if batch and (gold.min() < 0 or gold.max() >= n):
        _fail("Gold ids out of range [0, {}).".format(n))
    keep = np.ones((batch, n), dtype=bool)
    if filters is not None:
        lengths = np.fromiter((len(f) for f in filters), dtype=np.int64, count=batch)
        if lengths.sum():
            keep[np.repeat(rows, lengths), np.concatenate([np.asarray(f, dtype=np.int64) for f in filters])] = False
        keep[rows, gold] = True
    target = scores[rows, gold][:, None]
    higher = np.count_nonzero((scores > target) & keep, axis=1)
    equal = np.count_nonzero((scores == target) & keep, axis=1) - 1
    return 1.0 + higher + _tie_weight(ties) * equal


# ------------------------------------------------------------------------------------------------------------------------ #


@dataclass
class Metrics:
    count: int
    mr: float
    mrr: float
    hits1: float
    hits3: float
    hits10: float

    @classmethod
    def from_ranks(cls, ranks: np.ndarray) -> "Metrics":
        ranks = np.asarray(ranks, dtype=np.float64)
        if not ranks.size:
            return cls(0, np.nan, np.nan, np.nan, np.nan, np.nan)
        return cls(count=int(ranks.size), mr=float(ranks.mean()), mrr=float((1.0 / ranks).mean()),
                   hits1=float((ranks <= 1).mean()), hits3=float((ranks <= 3).mean()),
                   hits10=float((ranks <= 10).mean()))

    def to_dict(self) -> dict:
        return {c: getattr(self, c) for c in METRIC_COLUMNS}


def _metric_frame(ranks: pd.DataFrame, keys: List[str], levels: List[Sequence[str]]) -> pd.DataFrame:
    index = pd.MultiIndex.from_product(levels, names=keys) if len(keys) > 1 else pd.Index(levels[0], name=keys[0])
    rows = []
    grouped = dict(list(ranks.groupby(keys if len(keys) > 1 else keys[0], observed=True)["rank"]))
    for key in index:
        rows.append(Metrics.from_ranks(grouped[key].to_numpy() if key in grouped else []).to_dict())
    return pd.DataFrame(rows, index=index, columns=METRIC_COLUMNS).reset_index()


@dataclass
class EvalReport:
    """Metrics of one split, overall and broken down by category x direction and by degree bucket.

    ``ranks`` holds one row per query: relation, direction, category, gold entity, its train
    degree and bucket, and the filtered and raw ranks.
    """

    split: str
    ties: str
    ranks: pd.DataFrame
    overall: Dict[str, Metrics] = field(init=False)
    by_category: pd.DataFrame = field(init=False)
    by_degree: pd.DataFrame = field(init=False)

    def __post_init__(self) -> None:
        self.overall = {"both": Metrics.from_ranks(self.ranks["rank"].to_numpy())}
        for direction in DIRECTIONS:
            subset = self.ranks.loc[self.ranks["direction"] == direction, "rank"]
            self.overall[direction] = Metrics.from_ranks(subset.to_numpy())
        self.by_category = _metric_frame(self.ranks, ["category", "direction"], [CATEGORIES, DIRECTIONS])
        self.by_degree = _metric_frame(self.ranks, ["bucket"], [DEGREE_BUCKETS])

    def overall_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame([self.overall[k].to_dict() for k in ("both", "head", "tail")], columns=METRIC_COLUMNS)
        frame.insert(0, "scope", ["both", "head", "tail"])
        return frame

    def validate(self, tol: float = 1e-12) -> "EvalReport":
        """Checks metric invariants and raises ReportInvariantError on the first violation."""
        def check(ok: bool, msg: str) -> None:
            if not ok:
                _fail("{} report for {}: {}".format(self.ties, self.split, msg), ReportInvariantError)

        if not len(self.ranks):
            return self
        reciprocal = 1.0 / self.ranks["rank"].to_numpy()
        check(bool(((reciprocal > 0) & (reciprocal <= 1)).all()), "reciprocal ranks outside (0, 1].")
        check(bool((self.ranks["rank"] <= self.ranks["raw_rank"] + tol).all()), "a filtered rank exceeds its raw rank.")
        for scope, m in self.overall.items():
            if not m.count:
                continue
            check(m.mr >= 1.0, "{} MR {} < 1.".format(scope, m.mr))
            check(0.0 <= m.mrr <= 1.0, "{} MRR {} outside [0, 1].".format(scope, m.mrr))
            check(m.mrr + tol >= 1.0 / m.mr, "{} MRR {} < 1/MR {}.".format(scope, m.mrr, 1.0 / m.mr))
            check(m.hits1 <= m.hits10, "{} Hit@1 {} > Hit@10 {}.".format(scope, m.hits1, m.hits10))
        total = self.overall["both"].count
        check(int(self.by_degree["count"].sum()) == total, "degree bucket counts do not sum to {}.".format(total))
        check(int(self.by_category["count"].sum()) == total, "category counts do not sum to {}.".format(total))
        return self

    def summary(self) -> str:
        m = self.overall["both"]
        return "{} ({} ties): MR {:.6g}, MRR {:.6g}, Hit@1 {:.6g}, Hit@10 {:.6g} over {} predictions.".format(
            self.split, self.ties, m.mr, m.mrr, m.hits1, m.hits10, m.count)


# ------------------------------------------------------------------------------------------------------------------------ #
def degree_bucket(degrees: np.ndarray) -> pd.Categorical:
    """Bucket label of each degree. Degree 0 falls into bucket "1"."""
    return pd.cut(np.asarray(degrees), bins=list(DEGREE_EDGES), labels=list(DEGREE_BUCKETS), right=True)


def evaluate_scores(score_fn: ScoreFn, dataset: Dataset, split: str, ties: str = "average",
                    workers: Optional[int] = None, batch_size: int = EVAL_BATCH_SIZE) -> EvalReport:
    """Filtered evaluation of any scorer returning a batch x n_entities matrix.

    Each triple is asked twice: (h, r, ?) for the tail and (t, r', ?) for the head.
    """
    _tie_weight(ties)
    queries = dataset.queries(split)
    n = len(dataset.split(split))
    starts = list(range(0, len(queries), batch_size))

    def rank_batch(start: int) -> Tuple[np.ndarray, np.ndarray]:
        batch = queries[start:start + batch_size]
        scores = score_fn(batch[:, 0], batch[:, 1])
        filters = [dataset.true_tails(h, r) for h, r in batch[:, :2]]
        return batch_ranks(scores, batch[:, 2], filters, ties), batch_ranks(scores, batch[:, 2], None, ties)

    results = map_ordered(rank_batch, starts, workers)
    filtered = np.concatenate([r[0] for r in results]) if results else np.empty(0)
    raw = np.concatenate([r[1] for r in results]) if results else np.empty(0)

    relation = queries[:, 1] % dataset.n_relations
    gold = queries[:, 2]
    degree = dataset.entity_degree[gold]
    ranks = pd.DataFrame({
        "head": queries[:, 0],
        "relation": relation,
        "direction": np.where(np.arange(len(queries)) < n, "tail", "head"),
        "category": [dataset.relation_categories[int(r)] for r in relation],
        "gold": gold,
        "degree": degree,
        "bucket": degree_bucket(degree),
        "rank": filtered,
        "raw_rank": raw,
    })
    report = EvalReport(split=split, ties=ties, ranks=ranks).validate()
    logger.info(report.summary())
    return report


def evaluate(model, dataset: Dataset, split: str, ties: str = "average", workers: Optional[int] = None,
             batch_size: int = EVAL_BATCH_SIZE) -> EvalReport:
    """Evaluates a model on a split. t' is computed once and shared by every batch."""
    model.set_mode(Mode.EVAL)
    projected = model.project_forward(Mode.EVAL, cache=False)

    def score_fn(heads: np.ndarray, relations: np.ndarray) -> np.ndarray:
        return model.score_all(heads, relations, Mode.EVAL, cache=False, projected=projected)

    return evaluate_scores(score_fn, dataset, split, ties, workers, batch_size)


def emit_report(report: EvalReport, directory: str) -> Dict[str, str]:
    """Writes overall.csv, by_category.csv and by_degree.csv with 6 significant digits."""
    try:
        os.makedirs(directory, exist_ok=True)
        paths = {name: os.path.join(directory, "{}.csv".format(name))
                 for name in ("overall", "by_category", "by_degree")}
        report.overall_frame().to_csv(paths["overall"], index=False, float_format=FLOAT_FORMAT)
        report.by_category.to_csv(paths["by_category"], index=False, float_format=FLOAT_FORMAT)
        report.by_degree.to_csv(paths["by_degree"], index=False, float_format=FLOAT_FORMAT)
    except OSError as e:
        msg = "Cannot write report to {}: {}".format(directory, e)
        logger.error(msg)
        raise
    logger.info("Wrote {} report to {}.".format(report.split, directory))
    return paths

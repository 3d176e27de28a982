#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# ======================================================================================================================== #
# Project  : DeepE Knowledge Graph Embedding                                                                               #
# Version  : 0.1.0                                                                                                         #
# File     : \test_dataset.py                                                                                              #
# Language : Python 3.8.12                                                                                                 #
# ------------------------------------------------------------------------------------------------------------------------ #
# Author   : John James                                                                                                    #
# Company  : nov8.ai                                                                                                       #
# Email    : john.james.sf@gmail.com                                                                                       #
# URL      : https://github.com/john-james-sf/deepe                                                                        #
# ------------------------------------------------------------------------------------------------------------------------ #
# Created  : Friday, September 25th 2026, 8:05:00 am                                                                       #
# Modified : Monday, September 28th 2026, 7:04:00 am                                                                       #
# Modifier : John James (john.james.sf@gmail.com)                                                                          #
# ------------------------------------------------------------------------------------------------------------------------ #
# License  : BSD 3-clause "New" or "Revised" License                                                                       #
# Copyright: (c) 2026 nov8.ai                                                                                              #
# ======================================================================================================================== #
# %%
import inspect
import logging
import os

import numpy as np
import pytest

from deepe.data.dataset import (Dataset, augment, build_filter_index, entity_degrees, load_tsv, read_triples,
                                relation_cardinality, reverse_relation, write_tsv)
from deepe.utils.exceptions import DataFormatError
# ------------------------------------------------------------------------------------------------------------------------ #
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


def write_lines(path, lines):
    with open(path, "w", encoding="utf-8") as fp:
        fp.write("".join(line + "\n" for line in lines))
    return str(path)


class ReadTests:

    def test_load_tsv_two_line_toy(self, tmp_path):
        logger.info("    Started {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

        train = write_lines(tmp_path / "train.txt", ["a\tr\tb", "b\tr\tc"])
        valid = write_lines(tmp_path / "valid.txt", ["a\tr\tc"])
        test = write_lines(tmp_path / "test.txt", ["c\ts\td"])
        dataset = load_tsv(train, valid, test)
        assert dataset.entities == ["a", "b", "c", "d"], "Failure in {}".format(inspect.stack()[0][3])
        assert dataset.relations == ["r", "s"], "Failure in {}".format(inspect.stack()[0][3])
        assert dataset.train.tolist() == [[0, 0, 1], [1, 0, 2]], "Failure in {}".format(inspect.stack()[0][3])
        assert dataset.test.tolist() == [[2, 1, 3]], "Failure in {}".format(inspect.stack()[0][3])
        assert dataset.augmented_relation_count == 4, "Failure in {}".format(inspect.stack()[0][3])

        logger.info("    Successfully completed {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

    def test_malformed_line_names_line_number(self, tmp_path):
        logger.info("    Started {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

        path = write_lines(tmp_path / "train.txt", ["a\tr\tb", "a\tr", "b\tr\tc"])
        with pytest.raises(DataFormatError) as e:
            read_triples(path)
        assert ":2:" in str(e.value), "Failure in {}".format(inspect.stack()[0][3])
        empty = write_lines(tmp_path / "empty.txt", ["a\t\tb"])
        with pytest.raises(DataFormatError):
            read_triples(empty)

        logger.info("    Successfully completed {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

    def test_invalid_utf8_names_line_number(self, tmp_path):
        path = tmp_path / "train.txt"
        path.write_bytes(b"a\tr\tb\n\xff\xfe\tr\tc\n")
        with pytest.raises(DataFormatError) as e:
            read_triples(str(path))
        assert "train.txt:2:" in str(e.value) and "UTF-8" in str(e.value)

    def test_blank_lines_skipped(self, tmp_path):
        path = write_lines(tmp_path / "train.txt", ["a\tr\tb", "", "b\tr\tc"])
        assert len(read_triples(path)) == 2

    def test_write_tsv_round_trip(self, tiny_dataset, tmp_path):
        logger.info("    Started {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

        paths = write_tsv(tiny_dataset, str(tmp_path))
        again = load_tsv(paths["train"], paths["valid"], paths["test"])
        assert again.entity_vocab_hash == tiny_dataset.entity_vocab_hash, "Failure in {}".format(inspect.stack()[0][3])
        assert np.array_equal(again.test, tiny_dataset.test), "Failure in {}".format(inspect.stack()[0][3])
        assert sorted(os.listdir(str(tmp_path))) == ["test.txt", "train.txt", "valid.txt"], \
            "Failure in {}".format(inspect.stack()[0][3])

        logger.info("    Successfully completed {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))


class DatasetTests:

    def test_vocab_and_splits(self, tiny_dataset):
        logger.info("    Started {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

        assert tiny_dataset.entities == ["a", "b", "c", "d", "e"], "Failure in {}".format(inspect.stack()[0][3])
        assert tiny_dataset.relations == ["r", "s"], "Failure in {}".format(inspect.stack()[0][3])
        assert len(tiny_dataset.train_augmented) == 10, "Failure in {}".format(inspect.stack()[0][3])
        assert tiny_dataset.train_augmented[5].tolist() == [1, 2, 0], "Failure in {}".format(inspect.stack()[0][3])
        with pytest.raises(ValueError):
            tiny_dataset.train[0, 0] = 3
        with pytest.raises(DataFormatError):
            tiny_dataset.split("dev")

        logger.info("    Successfully completed {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

    def test_caller_arrays_stay_writable(self):
        train = np.array([[0, 0, 1], [1, 0, 0]])
        Dataset(["a", "b"], ["r"], train, train[:1], train[1:])
        train[0, 0] = 1
        assert train[0, 0] == 1

    def test_out_of_range_ids(self):
        with pytest.raises(DataFormatError):
            Dataset(["a", "b"], ["r"], np.array([[0, 1, 2]]), np.empty((0, 3)), np.empty((0, 3)))
        with pytest.raises(DataFormatError):
            Dataset(["a", "b"], ["r"], np.array([[0, 1, 1]]), np.empty((0, 3)), np.empty((0, 3)))

    def test_queries_order(self, tiny_dataset):
        queries = tiny_dataset.queries("test")
        assert queries.tolist() == [[0, 1, 3], [4, 0, 0], [3, 3, 0], [0, 2, 4]]

    def test_reverse_relation(self):
        assert reverse_relation(1, 3) == 4
        assert reverse_relation(4, 3) == 1


class FilterIndexTests:

    def test_toy_graph(self):
        logger.info("    Started {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

        # a=0, b=1, c=2; r=0, r'=1
        index = build_filter_index([np.array([[0, 0, 1], [0, 0, 2]])], n_relations=1)
        assert index[(0, 0)].tolist() == [1, 2], "Failure in {}".format(inspect.stack()[0][3])
        assert index[(1, 1)].tolist() == [0], "Failure in {}".format(inspect.stack()[0][3])
        assert index[(2, 1)].tolist() == [0], "Failure in {}".format(inspect.stack()[0][3])

        logger.info("    Successfully completed {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

    def test_covers_every_split(self, tiny_dataset):
        logger.info("    Started {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

        assert tiny_dataset.true_tails(0, 0).tolist() == [1, 2], "Failure in {}".format(inspect.stack()[0][3])
        # (a, r', ?) holds d from train and e from test
        assert tiny_dataset.true_tails(0, 2).tolist() == [3, 4], "Failure in {}".format(inspect.stack()[0][3])
        assert tiny_dataset.true_tails(1, 0).tolist() == [3], "Failure in {}".format(inspect.stack()[0][3])
        assert tiny_dataset.true_tails(4, 1).size == 0, "Failure in {}".format(inspect.stack()[0][3])
        assert (4, 0) not in tiny_dataset.train_index, "Failure in {}".format(inspect.stack()[0][3])

        logger.info("    Successfully completed {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

    def test_matches_brute_force_scan(self):
        logger.info("    Started {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

        rng = np.random.default_rng(5)
        for _ in range(20):
            n, r = int(rng.integers(2, 12)), int(rng.integers(1, 4))
            splits = [np.stack([rng.integers(0, n, k), rng.integers(0, r, k), rng.integers(0, n, k)], axis=1)
                      for k in rng.integers(0, 15, 3)]
            index = build_filter_index(splits, r)
            expected = {}
            for triples in splits:
                for h, rel, t in triples:
                    expected.setdefault((int(h), int(rel)), set()).add(int(t))
                    expected.setdefault((int(t), int(rel) + r), set()).add(int(h))
            assert set(index) == set(expected), "Failure in {}".format(inspect.stack()[0][3])
            for key, tails in expected.items():
                assert index[key].tolist() == sorted(tails), "Failure in {}".format(inspect.stack()[0][3])

        logger.info("    Successfully completed {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))


class CategoryTests:

    def test_hand_cases(self):
        logger.info("    Started {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

        # relation 0: {(a, b)}; relation 1: {(a, b), (a, c)}; relation 2: {(a, c), (b, c)}; relation 3: N-N
        train = np.array([[0, 0, 1],
                          [0, 1, 1], [0, 1, 2],
                          [0, 2, 2], [1, 2, 2],
                          [0, 3, 0], [0, 3, 1], [1, 3, 0], [1, 3, 1]])
        stats = relation_cardinality(train, np.empty((0, 3), dtype=np.int64), 4)
        assert stats.loc[0, ["tph", "hpt"]].tolist() == [1.0, 1.0], "Failure in {}".format(inspect.stack()[0][3])
        assert stats.loc[1, ["tph", "hpt"]].tolist() == [2.0, 1.0], "Failure in {}".format(inspect.stack()[0][3])
        assert stats["category"].tolist() == ["1-1", "1-N", "N-1", "N-N"], "Failure in {}".format(inspect.stack()[0][3])
        assert not stats["flagged"].any(), "Failure in {}".format(inspect.stack()[0][3])

        logger.info("    Successfully completed {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

    def test_duplicates_count_once(self):
        train = np.array([[0, 0, 1], [0, 0, 1], [0, 0, 2]])
        assert relation_cardinality(train, np.empty((0, 3), dtype=np.int64), 1).loc[0, "tph"] == 2.0

    def test_reverse_relations_transposed(self, tiny_dataset):
        logger.info("    Started {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

        categories = tiny_dataset.relation_categories
        assert categories[0] == "1-N" and categories[2] == "N-1", "Failure in {}".format(inspect.stack()[0][3])
        assert categories[1] == "1-1" and categories[3] == "1-1", "Failure in {}".format(inspect.stack()[0][3])

        logger.info("    Successfully completed {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

    def test_relation_missing_from_train_is_flagged(self, caplog):
        logger.info("    Started {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

        with caplog.at_level(logging.WARNING):
            dataset = Dataset.from_triples([("a", "r", "b")], [("a", "u", "b"), ("a", "u", "c")], [])
        assert dataset.flagged_relations == {1}, "Failure in {}".format(inspect.stack()[0][3])
        assert dataset.relation_categories[1] == "1-N", "Failure in {}".format(inspect.stack()[0][3])
        assert "do not occur in train" in caplog.text, "Failure in {}".format(inspect.stack()[0][3])

        logger.info("    Successfully completed {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

    def test_matches_brute_force(self):
        rng = np.random.default_rng(9)
        train = np.stack([rng.integers(0, 8, 60), rng.integers(0, 3, 60), rng.integers(0, 8, 60)], axis=1)
        stats = relation_cardinality(train, np.empty((0, 3), dtype=np.int64), 3)
        for r in range(3):
            pairs = {(int(h), int(t)) for h, rel, t in train if rel == r}
            heads = {h for h, _ in pairs}
            tails = {t for _, t in pairs}
            assert abs(stats.loc[r, "tph"] - len(pairs) / len(heads)) < 1e-12
            assert abs(stats.loc[r, "hpt"] - len(pairs) / len(tails)) < 1e-12


class DegreeTests:

    def test_hand_cases(self, tiny_dataset):
        logger.info("    Started {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

        assert entity_degrees(np.array([[0, 0, 1]]), 2).tolist() == [1, 1], "Failure in {}".format(inspect.stack()[0][3])
        assert entity_degrees(np.array([[0, 0, 1], [0, 1, 2]]), 3)[0] == 2, "Failure in {}".format(inspect.stack()[0][3])
        assert tiny_dataset.entity_degree.tolist() == [3, 2, 3, 2, 0], "Failure in {}".format(inspect.stack()[0][3])
        assert tiny_dataset.entity_in_degree.tolist() == [1, 1, 2, 1, 0], "Failure in {}".format(inspect.stack()[0][3])

        logger.info("    Successfully completed {} {}".format(self.__class__.__name__, inspect.stack()[0][3]))

    def test_augment(self):
        triples = np.array([[0, 1, 2]])
        assert augment(triples, 3).tolist() == [[0, 1, 2], [2, 4, 0]]


if __name__ == "__main__":
    t = FilterIndexTests()
    t.test_toy_graph()

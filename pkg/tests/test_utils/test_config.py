#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# ======================================================================================================================== #
# Project  : DeepE Knowledge Graph Embedding                                                                               #
# Version  : 0.1.0                                                                                                         #
# File     : \test_config.py                                                                                               #
# Language : Python 3.8.12                                                                                                 #
# ------------------------------------------------------------------------------------------------------------------------ #
# Author   : John James                                                                                                    #
# Company  : nov8.ai                                                                                                       #
# Email    : john.james.sf@gmail.com                                                                                       #
# URL      : https://github.com/john-james-sf/deepe                                                                        #
# ------------------------------------------------------------------------------------------------------------------------ #
# Created  : Thursday, October 1st 2026, 7:47:00 am                                                                        #
# Modified : Sunday, October 4th 2026, 12:42:00 am                                                                         #
# Modifier : John James (john.james.sf@gmail.com)                                                                          #
# ------------------------------------------------------------------------------------------------------------------------ #
# License  : BSD 3-clause "New" or "Revised" License                                                                       #
# Copyright: (c) 2026 nov8.ai                                                                                              #
# ======================================================================================================================== #
# %%
import os
import pytest
import pandas as pd
import logging
import inspect

from deepe.utils.config import CONFIG_KEYS, Config
from deepe.utils.exceptions import ConfigError
# ------------------------------------------------------------------------------------------------------------------------ #
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

CONFIG_DIR = os.path.join(os.path.dirname(__file__), "..", "..", "config")


class ConfigTests:

    def test_defaults(self):
        logger.info("    Started {} {}".format(
            self.__class__.__name__, inspect.stack()[0][3]))

        config = Config()
        assert list(config.to_dict()) == list(CONFIG_KEYS), "Failure in {}".format(inspect.stack()[0][3])
        assert config.read_config('dim') == 200, "Failure in {}".format(inspect.stack()[0][3])
        assert config.read_config('plateau-factor') == 0.8, "Failure in {}".format(inspect.stack()[0][3])
        assert config.ties == 'average', "Failure in {}".format(inspect.stack()[0][3])

        logger.info("    Successfully completed {} {}".format(
            self.__class__.__name__, inspect.stack()[0][3]))

    def test_read_config(self, tmp_path):
        logger.info("    Started {} {}".format(
            self.__class__.__name__, inspect.stack()[0][3]))

        path = tmp_path / "run.cfg"
        path.write_text("# toy run\n"
                        "dim = 16\n"
                        "deepe-blocks=3   ; three blocks\n"
                        "\n"
                        "batch_norm = false\n"
                        "lr = 0.01  # faster\n")
        config = Config.read(str(path))
        assert config.read_config('dim') == 16, "Failure in {}".format(inspect.stack()[0][3])
        assert config.read_config('deepe_blocks') == 3, "Failure in {}".format(inspect.stack()[0][3])
        assert config.read_config('batch_norm') is False, "Failure in {}".format(inspect.stack()[0][3])
        assert config.read_config('lr') == 0.01, "Failure in {}".format(inspect.stack()[0][3])
        assert config.source == str(path), "Failure in {}".format(inspect.stack()[0][3])

        logger.info("    Successfully completed {} {}".format(
            self.__class__.__name__, inspect.stack()[0][3]))

    def test_bad_files(self, tmp_path):
        logger.info("    Started {} {}".format(
            self.__class__.__name__, inspect.stack()[0][3]))

        cases = {"unknown.cfg": "dimension = 16\n", "type.cfg": "dim = sixteen\n",
                 "choice.cfg": "ties = random\n", "duplicate.cfg": "dim = 16\ndim = 32\n"}
        for name, text in cases.items():
            path = tmp_path / name
            path.write_text(text)
            with pytest.raises(ConfigError):
                Config.read(str(path))

        logger.info("    Successfully completed {} {}".format(
            self.__class__.__name__, inspect.stack()[0][3]))

    def test_override_dominates_file(self, tmp_path):
        logger.info("    Started {} {}".format(
            self.__class__.__name__, inspect.stack()[0][3]))

        path = tmp_path / "run.cfg"
        path.write_text("dim = 16\nlr = 0.01\n")
        config = Config.read(str(path)).override(dim=8, lr=None, max_epochs="3")
        assert config.read_config('dim') == 8, "Failure in {}".format(inspect.stack()[0][3])
        assert config.read_config('lr') == 0.01, "Failure in {}".format(inspect.stack()[0][3])
        assert config.read_config('max_epochs') == 3, "Failure in {}".format(inspect.stack()[0][3])

        logger.info("    Successfully completed {} {}".format(
            self.__class__.__name__, inspect.stack()[0][3]))

    def test_model_and_train_config(self):
        logger.info("    Started {} {}".format(
            self.__class__.__name__, inspect.stack()[0][3]))

        config = Config(dict(dim=12, drop_input_fc=0.3, drop_identity=0.02, drop_resnet_fc=0.1, seed=9,
                             lr=0.002, loss='bce', label_smoothing=0.1))
        model = config.model_config()
        assert model.dim == 12 and model.seed == 9, "Failure in {}".format(inspect.stack()[0][3])
        assert (model.dropout.p_input, model.dropout.p_fc) == (0.3, 0.3), "Failure in {}".format(inspect.stack()[0][3])
        assert model.dropout.p_identity == 0.02, "Failure in {}".format(inspect.stack()[0][3])
        assert model.dropout.p_resnet_fc == 0.1, "Failure in {}".format(inspect.stack()[0][3])
        train = config.train_config()
        assert (train.lr, train.loss, train.seed) == (0.002, 'bce', 9), "Failure in {}".format(inspect.stack()[0][3])
        assert train.label_smoothing == 0.1, "Failure in {}".format(inspect.stack()[0][3])

        logger.info("    Successfully completed {} {}".format(
            self.__class__.__name__, inspect.stack()[0][3]))

    def test_header_and_write(self, tmp_path):
        logger.info("    Started {} {}".format(
            self.__class__.__name__, inspect.stack()[0][3]))

        config = Config(dict(dim=24))
        header = config.header().splitlines()
        assert header[0] == "Resolved configuration (defaults)", "Failure in {}".format(inspect.stack()[0][3])
        assert len(header) == len(CONFIG_KEYS) + 1, "Failure in {}".format(inspect.stack()[0][3])
        assert any(line.startswith("dim ") and line.endswith(": 24") for line in header), \
            "Failure in {}".format(inspect.stack()[0][3])
        path = str(tmp_path / "resolved.cfg")
        config.write(path)
        assert Config.read(path).to_dict() == config.to_dict(), "Failure in {}".format(inspect.stack()[0][3])

        logger.info("    Successfully completed {} {}".format(
            self.__class__.__name__, inspect.stack()[0][3]))

    def test_read_section(self):

        config = Config()
        train = config.read_section('train')
        assert 'lr' in train and 'dim' not in train, "Failure in {}".format(inspect.stack()[0][3])
        df = config.read_section('model', as_df=True)
        assert isinstance(df, pd.DataFrame), "Failure in {}".format(inspect.stack()[0][3])
        assert df.loc['dim', 'value'] == 200, "Failure in {}".format(inspect.stack()[0][3])

    def test_shipped_configs(self):
        logger.info("    Started {} {}".format(
            self.__class__.__name__, inspect.stack()[0][3]))

        wn18rr = Config.read(os.path.join(CONFIG_DIR, 'wn18rr.cfg'))
        assert wn18rr.read_config('dim') == 250, "Failure in {}".format(inspect.stack()[0][3])
        assert wn18rr.read_config('deepe_blocks') == 1, "Failure in {}".format(inspect.stack()[0][3])
        assert wn18rr.read_config('resnet_blocks') == 2, "Failure in {}".format(inspect.stack()[0][3])
        fb = Config.read(os.path.join(CONFIG_DIR, 'fb15k-237.cfg'))
        assert fb.read_config('deepe_blocks') == 40, "Failure in {}".format(inspect.stack()[0][3])
        for name in ('toy.cfg', 'yago3-10.cfg'):
            config = Config.read(os.path.join(CONFIG_DIR, name))
            config.model_config()
            config.train_config()
        # benchmark presets train with plain softmax targets
        for name in ('fb15k-237.cfg', 'wn18rr.cfg', 'yago3-10.cfg'):
            config = Config.read(os.path.join(CONFIG_DIR, name))
            assert config.read_config('label_smoothing') == 0.0, "Failure in {}: {}".format(
                inspect.stack()[0][3], name)

        logger.info("    Successfully completed {} {}".format(
            self.__class__.__name__, inspect.stack()[0][3]))


if __name__ == "__main__":
    t = ConfigTests()
    t.test_defaults()
    t.test_model_and_train_config()
    t.test_read_section()


# %%

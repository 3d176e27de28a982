#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# ======================================================================================================================== #
# Project  : DeepE Knowledge Graph Embedding                                                                               #
# Version  : 0.1.0                                                                                                         #
# File     : \config.py                                                                                                    #
# Language : Python 3.8.12                                                                                                 #
# ------------------------------------------------------------------------------------------------------------------------ #
# Author   : John James                                                                                                    #
# Company  : nov8.ai                                                                                                       #
# Email    : john.james.sf@gmail.com                                                                                       #
# URL      : https://github.com/john-james-sf/deepe                                                                        #
# ------------------------------------------------------------------------------------------------------------------------ #
# Created  : Wednesday, September 30th 2026, 6:10:00 am                                                                    #
# Modified : Saturday, October 3rd 2026, 11:29:00 am                                                                       #
# Modifier : John James (john.james.sf@gmail.com)                                                                          #
# ------------------------------------------------------------------------------------------------------------------------ #
# License  : BSD 3-clause "New" or "Revised" License                                                                       #
# Copyright: (c) 2026 nov8.ai                                                                                              #
# ======================================================================================================================== #

"""Line-oriented key=value run configuration."""
from collections import OrderedDict
from configparser import ConfigParser, Error as ConfigParserError
import logging
from typing import Any, Callable, Dict, NamedTuple, Optional, Tuple

import pandas as pd

from deepe.models.model import DropoutSpec, ModelConfig
from deepe.models.train_model import TrainConfig
from deepe.utils.exceptions import ConfigError
# ------------------------------------------------------------------------------------------------------------------------ #
logger = logging.getLogger(__name__)
# ------------------------------------------------------------------------------------------------------------------------ #
SECTION = "deepe"


def parse_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise ValueError("not a boolean: {!r}".format(value))


class ConfigKey(NamedTuple):
    kind: Callable[[Any], Any]
    default: Any
    group: str
    help: str
    choices: Optional[Tuple[str, ...]] = None


CONFIG_KEYS: "OrderedDict[str, ConfigKey]" = OrderedDict([
    ("dim", ConfigKey(int, 200, "model", "Embedding dimension d.")),
    ("deepe_blocks", ConfigKey(int, 1, "model", "Stacked blocks in the feature network.")),
    ("deepe_inner", ConfigKey(int, 2, "model", "Linear layers inside each feature block.")),
    ("resnet_blocks", ConfigKey(int, 1, "model", "ResNet blocks in the project network (0-2).")),
    ("resnet_inner", ConfigKey(int, 2, "model", "Linear layers inside each project block.")),
    ("drop_input_fc", ConfigKey(float, 0.0, "model", "Dropout on the input layer and inner FC layers.")),
    ("drop_identity", ConfigKey(float, 0.0, "model", "Dropout on the identity mapping of feature blocks.")),
    ("drop_resnet_fc", ConfigKey(float, 0.0, "model", "Dropout on the FC layers of the project network.")),
    ("batch_norm", ConfigKey(parse_bool, True, "model", "Batch norm after every linear layer.")),
    ("feature_block_kind", ConfigKey(str, "deepe", "model", "Feature block kind.", ("deepe", "resnet"))),
    ("gate", ConfigKey(str, "both", "model", "Active branches of single-block feature networks.",
                       ("both", "linear", "nonlinear"))),
    ("activation", ConfigKey(str, "relu", "model", "Inner non-linearity.", ("relu", "identity"))),
    ("precision", ConfigKey(int, 32, "model", "Floating point precision in bits.", None)),
    ("lr", ConfigKey(float, 0.003, "train", "Initial learning rate.")),
    ("l2", ConfigKey(float, 0.0, "train", "L2 coefficient on every parameter.")),
    ("batch_size", ConfigKey(int, 512, "train", "Training batch size.")),
    ("seed", ConfigKey(int, 0, "train", "Seed of initialization, dropout and shuffling.")),
    ("max_epochs", ConfigKey(int, 1000, "train", "Maximum training epochs.")),
    ("plateau_factor", ConfigKey(float, 0.8, "train", "Learning-rate decay factor on a loss plateau.")),
    ("plateau_patience", ConfigKey(int, 5, "train", "Flat epochs before the learning rate decays.")),
    ("early_stop_patience", ConfigKey(int, 10, "train", "Evaluations without MRR gain before stopping.")),
    ("eval_every", ConfigKey(int, 1, "train", "Epochs between model-selection evaluations.")),
    ("label_smoothing", ConfigKey(float, 0.0, "train", "Target mass spread uniformly over entities.")),
    ("loss", ConfigKey(str, "softmax", "train", "Training loss.", ("softmax", "bce"))),
    ("valid_split", ConfigKey(str, "valid", "train", "Split used for model selection.", ("train", "valid", "test"))),
    ("ties", ConfigKey(str, "average", "eval", "Tie policy of ranking.", ("average", "pessimistic", "optimistic"))),
])


def normalize_key(key: str) -> str:
    return key.strip().lower().replace("-", "_")


# ------------------------------------------------------------------------------------------------------------------------ #


class Config:
    """Resolved configuration: registry defaults, then file values, then flag overrides."""

    def __init__(self, values: Optional[Dict[str, Any]] = None) -> None:
        self._values: Dict[str, Any] = OrderedDict((k, spec.default) for k, spec in CONFIG_KEYS.items())
        self.source: Optional[str] = None
        for key, value in (values or {}).items():
            self.set(key, value)

    @classmethod
    def read(cls, path: str) -> "Config":
        """Reads key=value lines. ``#`` and ``;`` start comments."""
        with open(path, "r", encoding="utf-8") as fp:
            text = fp.read()
        parser = ConfigParser(inline_comment_prefixes=("#", ";"), default_section="__defaults__")
        parser.optionxform = str
        try:
            parser.read_string("[{}]\n{}".format(SECTION, text), source=path)
        except ConfigParserError as e:
            msg = "Cannot parse config {}: {}".format(path, e)
            logger.error(msg)
            raise ConfigError(msg)
        config = cls()
        config.source = path
        for section in parser.sections():
            for key, value in parser[section].items():
                config.set(key, value)
        logger.debug("Read {} keys from {}.".format(sum(len(parser[s]) for s in parser.sections()), path))
        return config

    def set(self, key: str, value: Any) -> None:
        name = normalize_key(key)
        if name not in CONFIG_KEYS:
            msg = "Unknown config key {!r}. Known keys: {}.".format(key, ", ".join(CONFIG_KEYS))
            logger.error(msg)
            raise ConfigError(msg)
        spec = CONFIG_KEYS[name]
        try:
            parsed = spec.kind(value.strip() if isinstance(value, str) else value)
        except (TypeError, ValueError):
            msg = "Config key {} expects {}, got {!r}.".format(name, spec.kind.__name__, value)
            logger.error(msg)
            raise ConfigError(msg)
        if spec.choices is not None and parsed not in spec.choices:
            msg = "Config key {} must be one of {}, got {!r}.".format(name, spec.choices, parsed)
            logger.error(msg)
            raise ConfigError(msg)
        self._values[name] = parsed

    def override(self, **flags: Any) -> "Config":
        """Applies every flag whose value is not None. Flags dominate file values."""
        for key, value in flags.items():
            if value is not None:
                self.set(key, value)
        return self

    def read_config(self, option: str) -> Any:
        name = normalize_key(option)
        if name not in self._values:
            msg = "Unknown config key {!r}.".format(option)
            logger.error(msg)
            raise ConfigError(msg)
        return self._values[name]

    def read_section(self, group: Optional[str] = None, as_df: bool = False):
        """Returns the keys of one group (model, train, eval), or all keys, as a dict or dataframe."""
        d = OrderedDict((k, v) for k, v in self._values.items() if group is None or CONFIG_KEYS[k].group == group)
        if as_df:
            return pd.DataFrame.from_dict(d, orient="index", columns=["value"])
        return d

    def to_dict(self) -> Dict[str, Any]:
        return dict(self._values)

    def to_text(self) -> str:
        return "".join("{} = {}\n".format(k, v) for k, v in self._values.items())

    def write(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fp:
            fp.write(self.to_text())

    def header(self) -> str:
        """Human-readable run header echoing every resolved key."""
        width = max(len(k) for k in self._values)
        lines = ["{} : {}".format(k.ljust(width), v) for k, v in self._values.items()]
        return "\n".join(["Resolved configuration ({})".format(self.source or "defaults")] + lines)

    # -------------------------------------------------------------------------------------------------------------------- #
    def model_config(self) -> ModelConfig:
        v = self._values
        dropout = DropoutSpec(p_input=v["drop_input_fc"], p_fc=v["drop_input_fc"], p_identity=v["drop_identity"],
                              p_resnet_fc=v["drop_resnet_fc"])
        return ModelConfig(dim=v["dim"], deepe_blocks=v["deepe_blocks"], resnet_blocks=v["resnet_blocks"],
                           resnet_inner=v["resnet_inner"], deepe_inner=v["deepe_inner"], dropout=dropout,
                           seed=v["seed"], precision=v["precision"], batch_norm=v["batch_norm"],
                           feature_block_kind=v["feature_block_kind"], gate=v["gate"], activation=v["activation"])

    def train_config(self) -> TrainConfig:
        v = self._values
        return TrainConfig(lr=v["lr"], l2=v["l2"], batch_size=v["batch_size"], seed=v["seed"],
                           max_epochs=v["max_epochs"], plateau_factor=v["plateau_factor"],
                           plateau_patience=v["plateau_patience"], early_stop_patience=v["early_stop_patience"],
                           eval_every=v["eval_every"], label_smoothing=v["label_smoothing"], loss=v["loss"],
                           valid_split=v["valid_split"])

    @property
    def ties(self) -> str:
        return self._values["ties"]

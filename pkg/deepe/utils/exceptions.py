#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# ======================================================================================================================== #
# Project  : DeepE Knowledge Graph Embedding                                                                               #
# Version  : 0.1.0                                                                                                         #
# File     : \exceptions.py                                                                                                #
# Language : Python 3.8.12                                                                                                 #
# ------------------------------------------------------------------------------------------------------------------------ #
# Author   : John James                                                                                                    #
# Company  : nov8.ai                                                                                                       #
# Email    : john.james.sf@gmail.com                                                                                       #
# URL      : https://github.com/john-james-sf/deepe                                                                        #
# ------------------------------------------------------------------------------------------------------------------------ #
# Created  : Sunday, September 20th 2026, 12:00:00 am                                                                      #
# Modified : Thursday, September 24th 2026, 3:32:00 am                                                                     #
# Modifier : John James (john.james.sf@gmail.com)                                                                          #
# ------------------------------------------------------------------------------------------------------------------------ #
# License  : BSD 3-clause "New" or "Revised" License                                                                       #
# Copyright: (c) 2026 nov8.ai                                                                                              #
# ======================================================================================================================== #

"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class DeepEError(Exception):
    """Base class for errors raised by the deepe package."""

    exit_code = 1


class ShapeError(DeepEError, ValueError):
    """Array dimensions are incompatible with the requested operation."""

    exit_code = 2


class ModeError(DeepEError, RuntimeError):
    """A layer was invoked in a mode other than the one it is set to."""


class MissingCacheError(DeepEError, RuntimeError):
    """Backward was requested without a matching forward pass."""


class ConfigError(DeepEError, ValueError):
    """Invalid or unknown configuration value."""

    exit_code = 2


class DataFormatError(DeepEError, ValueError):
    """Malformed triple file or out-of-range identifier."""

    exit_code = 2


class VocabMismatchError(DeepEError):
    """Checkpoint vocabularies do not match the loaded dataset."""

    exit_code = 2


class CheckpointError(DeepEError):
    """Checkpoint archive is unreadable, truncated or fails its digest."""

    exit_code = 3


class NonFiniteLossError(DeepEError, ArithmeticError):
    """Training produced a NaN or infinite loss."""


class ParameterAuditError(DeepEError, AssertionError):
    """Enumerated parameter count disagrees with the closed form."""


class ReportInvariantError(DeepEError, AssertionError):
    """An evaluation report violates a metric invariant."""


class GradientCheckError(DeepEError):
    """Analytic gradients disagree with finite differences."""

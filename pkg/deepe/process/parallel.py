#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# ======================================================================================================================== #
# Project  : DeepE Knowledge Graph Embedding                                                                               #
# Version  : 0.1.0                                                                                                         #
# File     : \parallel.py                                                                                                  #
# Language : Python 3.8.12                                                                                                 #
# ------------------------------------------------------------------------------------------------------------------------ #
# Author   : John James                                                                                                    #
# Company  : nov8.ai                                                                                                       #
# Email    : john.james.sf@gmail.com                                                                                       #
# URL      : https://github.com/john-james-sf/deepe                                                                        #
# ------------------------------------------------------------------------------------------------------------------------ #
# Created  : Monday, September 28th 2026, 2:56:00 am                                                                       #
# Modified : Friday, October 2nd 2026, 10:36:00 am                                                                         #
# Modifier : John James (john.james.sf@gmail.com)                                                                          #
# ------------------------------------------------------------------------------------------------------------------------ #
# License  : BSD 3-clause "New" or "Revised" License                                                                       #
# Copyright: (c) 2026 nov8.ai                                                                                              #
# ======================================================================================================================== #

"""Ordered fan-out of read-only work over a thread pool."""
import logging
import math
import multiprocessing as mp
from multiprocessing.pool import ThreadPool
import os
from typing import Callable, List, Optional, Sequence, TypeVar

from deepe.utils.exceptions import ConfigError
# ------------------------------------------------------------------------------------------------------------------------ #
logger = logging.getLogger(__name__)
# ------------------------------------------------------------------------------------------------------------------------ #
NUM_WORKERS_ENV = "DEEPE_NUM_WORKERS"
NUM_PROCESSORS = max(1, int(math.floor(mp.cpu_count() / 2)))

T = TypeVar("T")
R = TypeVar("R")


def _positive(value, source: str) -> int:
    try:
        workers = int(value)
    except (TypeError, ValueError):
        workers = 0
    if workers < 1:
        msg = "{} must be a positive integer, got {!r}.".format(source, value)
        logger.error(msg)
        raise ConfigError(msg)
    return workers


def num_workers(requested: Optional[int] = None) -> int:
    """Worker count: the request, capped by DEEPE_NUM_WORKERS when set. Without a request the
    variable decides, else half the CPUs."""
    env = os.environ.get(NUM_WORKERS_ENV)
    cap = _positive(env, NUM_WORKERS_ENV) if env not in (None, "") else None
    if requested is None:
        return cap if cap is not None else NUM_PROCESSORS
    workers = _positive(requested, "workers")
    return min(workers, cap) if cap is not None else workers


def map_ordered(fn: Callable[[T], R], items: Sequence[T], workers: Optional[int] = None) -> List[R]:
    """Applies fn to every item and returns the results in submission order."""
    workers = min(num_workers(workers), max(1, len(items)))
    if workers == 1:
        return [fn(item) for item in items]
    with ThreadPool(processes=workers) as pool:
        pending = [pool.apply_async(fn, args=(item,)) for item in items]
        results = [job.get() for job in pending]
    logger.debug("Mapped {} items over {} workers.".format(len(items), workers))
    return results

#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# ======================================================================================================================== #
# Project  : DeepE Knowledge Graph Embedding                                                                               #
# Version  : 0.1.0                                                                                                         #
# File     : \system.py                                                                                                    #
# Language : Python 3.8.12                                                                                                 #
# ------------------------------------------------------------------------------------------------------------------------ #
# Author   : John James                                                                                                    #
# Company  : nov8.ai                                                                                                       #
# Email    : john.james.sf@gmail.com                                                                                       #
# URL      : https://github.com/john-james-sf/deepe                                                                        #
# ------------------------------------------------------------------------------------------------------------------------ #
# Created  : Tuesday, September 22nd 2026, 3:14:00 am                                                                      #
# Modified : Tuesday, September 29th 2026, 7:57:00 am                                                                      #
# Modifier : John James (john.james.sf@gmail.com)                                                                          #
# ------------------------------------------------------------------------------------------------------------------------ #
# License  : BSD 3-clause "New" or "Revised" License                                                                       #
# Copyright: (c) 2026 nov8.ai                                                                                              #
# ======================================================================================================================== #

from datetime import datetime
import logging
from typing import Dict, Optional

import psutil
# ------------------------------------------------------------------------------------------------------------------------ #
logger = logging.getLogger(__name__)
# ------------------------------------------------------------------------------------------------------------------------ #


class Profiler:
    """Captures process resource utilization statistics."""

    def __init__(self, jobname: str) -> None:
        self.jobname = jobname
        self.profiler = psutil.Process()
        self._stats: Dict[str, object] = {}
        self._start: Optional[datetime] = None

    def extract_tuple(self) -> dict:
        d = {}
        T = [self.profiler.memory_info(), self.profiler.cpu_times()]
        for t in T:
            for k, v in t._asdict().items():
                d[k] = v
        return d

    def extract_dict(self) -> dict:
        d = self.profiler.as_dict(attrs=['pid', 'num_threads', 'memory_percent'])
        d['job'] = self.jobname
        d['cpu_count'] = psutil.cpu_count()
        return d

    def start(self) -> None:
        self._start = datetime.now()
        self._stats['start_time'] = self._start.isoformat(timespec="seconds")

    def end(self) -> dict:
        end = datetime.now()
        self._stats['end_time'] = end.isoformat(timespec="seconds")
        if self._start is not None:
            self._stats['wall_time'] = (end - self._start).total_seconds()
        self._stats.update(self.extract_dict())
        self._stats.update(self.extract_tuple())
        logger.debug("Profiled {}: {:.3g}s wall time.".format(self.jobname, self._stats.get('wall_time', 0.0)))
        return self.stats

    @property
    def stats(self) -> dict:
        return dict(self._stats)

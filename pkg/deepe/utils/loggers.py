#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# ======================================================================================================================== #
# Project  : DeepE Knowledge Graph Embedding                                                                               #
# Version  : 0.1.0                                                                                                         #
# File     : \loggers.py                                                                                                   #
# Language : Python 3.8.12                                                                                                 #
# ------------------------------------------------------------------------------------------------------------------------ #
# Author   : John James                                                                                                    #
# Company  : nov8.ai                                                                                                       #
# Email    : john.james.sf@gmail.com                                                                                       #
# URL      : https://github.com/john-james-sf/deepe                                                                        #
# ------------------------------------------------------------------------------------------------------------------------ #
# Created  : Monday, September 21st 2026, 1:37:00 am                                                                       #
# Modified : Sunday, September 27th 2026, 6:11:00 am                                                                       #
# Modifier : John James (john.james.sf@gmail.com)                                                                          #
# ------------------------------------------------------------------------------------------------------------------------ #
# License  : BSD 3-clause "New" or "Revised" License                                                                       #
# Copyright: (c) 2026 nov8.ai                                                                                              #
# ======================================================================================================================== #

"""Log Management Utilities."""
import logging
import os
from typing import Optional

# ------------------------------------------------------------------------------------------------------------------------ #
LOG_FORMAT = '%(asctime)s %(processName)-10s %(name)s %(levelname)-8s %(message)s'
CONSOLE_FORMAT = '%(levelname)-8s %(message)s'


class LogFile:

    def __init__(self, logdir: str = "logs") -> None:
        self._logdir = logdir

    def get_logfile(self, logger: str = 'root', level: str = 'debug') -> str:
        """Returns a log filename for the given logger and level, creating its directory."""
        filename = logger.lower() + '_' + level.lower() + '.log'
        os.makedirs(self._logdir, exist_ok=True)
        return os.path.join(self._logdir, filename)


# ------------------------------------------------------------------------------------------------------------------------ #
def configure_logging(run_dir: Optional[str] = None, verbose: bool = False) -> Optional[str]:
    """Attaches a console handler and, given a run directory, a debug file handler to the root logger.

    Handlers from an earlier call are replaced. Returns the log file path, if any.
    """
    root = logging.getLogger()
    for handler in [h for h in root.handlers if getattr(h, "_deepe", False)]:
        root.removeHandler(handler)
        handler.close()
    root.setLevel(logging.DEBUG)

    console = logging.StreamHandler()
    console.setLevel(logging.DEBUG if verbose else logging.INFO)
    console.setFormatter(logging.Formatter(CONSOLE_FORMAT))
    console._deepe = True
    root.addHandler(console)

    if run_dir is None:
        return None
    logfilepath = LogFile(os.path.join(run_dir, "logs")).get_logfile(logger='deepe', level='debug')
    h = logging.FileHandler(logfilepath)
    h.setLevel(logging.DEBUG)
    h.setFormatter(logging.Formatter(LOG_FORMAT))
    h._deepe = True
    root.addHandler(h)
    return logfilepath

#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# ======================================================================================================================== #
# Project  : DeepE Knowledge Graph Embedding                                                                               #
# Version  : 0.1.0                                                                                                         #
# File     : \file.py                                                                                                      #
# Language : Python 3.8.12                                                                                                 #
# ------------------------------------------------------------------------------------------------------------------------ #
# Author   : John James                                                                                                    #
# Company  : nov8.ai                                                                                                       #
# Email    : john.james.sf@gmail.com                                                                                       #
# URL      : https://github.com/john-james-sf/deepe                                                                        #
# ------------------------------------------------------------------------------------------------------------------------ #
# Created  : Tuesday, September 22nd 2026, 3:14:00 am                                                                      #
# Modified : Friday, September 25th 2026, 4:25:00 am                                                                       #
# Modifier : John James (john.james.sf@gmail.com)                                                                          #
# ------------------------------------------------------------------------------------------------------------------------ #
# License  : BSD 3-clause "New" or "Revised" License                                                                       #
# Copyright: (c) 2026 nov8.ai                                                                                              #
# ======================================================================================================================== #

"""File utilities."""
from datetime import datetime
import hashlib
import json
import logging
import os
import platform
import sys
from typing import Dict, Iterable, Optional

import numpy as np
import pandas as pd
# ------------------------------------------------------------------------------------------------------------------------ #
logger = logging.getLogger(__name__)
# ------------------------------------------------------------------------------------------------------------------------ #
MANIFEST = "manifest.json"


def file_digest(path: str, chunk: int = 1 << 20) -> str:
    """Returns the sha256 hex digest of a file."""
    digest = hashlib.sha256()
    with open(path, "rb") as fp:
        for block in iter(lambda: fp.read(chunk), b""):
            digest.update(block)
    return digest.hexdigest()


def make_run_dir(basedir: str, name: Optional[str] = None) -> str:
    """Creates and returns basedir/name, naming the run by its start time when no name is given."""
    name = name or datetime.now().strftime("%Y%m%d_%H%M%S")
    path = os.path.join(basedir, name)
    os.makedirs(path, exist_ok=True)
    return path


def versions() -> Dict[str, str]:
    from deepe import __version__
    return {"deepe": __version__, "numpy": np.__version__, "pandas": pd.__version__,
            "python": sys.version.split()[0], "platform": platform.platform()}


def write_manifest(directory: str, command: str, config: Optional[dict] = None,
                   seeds: Iterable[int] = (), data_files: Iterable[str] = (),
                   profile: Optional[dict] = None, artifacts: Iterable[str] = (),
                   extra: Optional[dict] = None) -> str:
    """Writes manifest.json: command, resolved config, seeds, data digests, versions and resources."""
    os.makedirs(directory, exist_ok=True)
    manifest = {
        "command": command,
        "argv": sys.argv,
        "created": datetime.now().isoformat(timespec="seconds"),
        "config": config or {},
        "seeds": [int(s) for s in seeds],
        "data": {os.path.abspath(p): file_digest(p) for p in data_files},
        "artifacts": sorted(os.path.relpath(a, directory) for a in artifacts),
        "versions": versions(),
        "profile": profile or {},
    }
    manifest.update(extra or {})
    path = os.path.join(directory, MANIFEST)
    with open(path, "w", encoding="utf-8") as fp:
        json.dump(manifest, fp, indent=2, sort_keys=True, default=str)
    logger.info("Wrote manifest to {}.".format(path))
    return path

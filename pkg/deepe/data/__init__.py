#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# ======================================================================================================================== #
# Project  : DeepE Knowledge Graph Embedding                                                                               #
# Version  : 0.1.0                                                                                                         #
# File     : \__init__.py                                                                                                  #
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

# Copyright 2026 The connred Authors
# SPDX-License-Identifier: Apache-2.0
"""Connection topologies, network graphs and analytic costs for DenseNet-style CNNs."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"

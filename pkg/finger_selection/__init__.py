"""Simulate finger selection for MMSE selective-Rake receivers in IR-UWB systems.

The package is silent by default; the command line interface enables its logs.
"""

from loguru import logger

logger.disable("finger_selection")

"""
logger
"""

import logging
import os

from untangle import constants


def _create_logger():
    """creates a logger"""
    logger = logging.Logger("untangle")  # pylint: disable=redefined-outer-name

    formatter = logging.Formatter(constants.LOG_FORMAT)

    handler = logging.StreamHandler()
    handler.setFormatter(formatter)

    # UNTANGLE_LOG_LEVEL=DEBUG shows per-flip traces
    level = os.environ.get(constants.LOG_LEVEL_ENV, "INFO").upper()
    handler.setLevel(getattr(logging, level, logging.INFO))

    logger.addHandler(handler)

    return logger


logger = _create_logger()

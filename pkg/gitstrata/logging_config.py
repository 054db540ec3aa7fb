"""
Module: logging_config
Description: Structured logging setup (structlog on top of stdlib logging)

Author: pmac
Created: 2026-10-19
Modified: 2026-10-19

Dependencies:
- structlog: 23.2.0+ - Structured key=value logging

Usage:
    import structlog

    logger = structlog.get_logger(__name__)
    logger.info("index_set.done", candidates=12)

Notes:
    - Everything is written to stderr; stdout is reserved for JSON reports
    - Called once on package import, again by the CLI when --log-level is set
"""

import logging
import sys

import structlog


def configure_logging(level: str = "WARNING", fmt: str = "console") -> None:
    """Configure stdlib logging and structlog with a shared level.

    Args:
        level: Standard logging level name.
        fmt: "console" for human-readable lines, "json" for one JSON object
            per event.
    """
    numeric_level = getattr(logging, level.upper(), logging.WARNING)

    logging.basicConfig(
        stream=sys.stderr,
        level=numeric_level,
        format="%(message)s",
        force=True,
    )

    renderer = (
        structlog.processors.JSONRenderer(sort_keys=True)
        if fmt == "json"
        else structlog.dev.ConsoleRenderer(colors=False)
    )

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.format_exc_info,
            renderer,
        ],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )

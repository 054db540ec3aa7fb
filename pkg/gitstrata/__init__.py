"""
Module: gitstrata
Description: Exact-arithmetic toolkit for instability stratifications in
             geometric invariant theory, with a worked binary-forms example
             and a Harder-Narasimhan layer for sheaves on the projective line

Author: pmac
Created: 2026-10-19
Modified: 2026-10-19

Dependencies:
- structlog: 23.2.0+ - Structured logging, configured on import
- pydantic-settings: 2.1.0+ - Environment-driven settings

Usage:
    from gitstrata.hkkn import index_set, sym_n_weight_system

    index_set(sym_n_weight_system(4))

Notes:
    - All arithmetic is exact (fractions.Fraction); floats are rejected
    - Logging goes to stderr at GITSTRATA_LOGGING_LEVEL (default WARNING)
"""

from .config import settings
from .logging_config import configure_logging

configure_logging(settings.logging_level, settings.log_format)

__version__ = settings.engine_version
__author__ = "Phil McNeely"
__description__ = "Exact instability stratifications for GIT quotients"

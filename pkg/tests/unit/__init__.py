"""
Module: tests.unit
Description: Package initialization for unit test modules

Author: pmac
Created: 2026-10-19
Modified: 2026-10-19

Dependencies:
- pytest: 7.4.3+ - Testing framework

Usage:
    pytest tests/unit/ -v
"""

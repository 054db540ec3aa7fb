"""
Module: tests
Description: Test suite package for gitstrata with unit and E2E test coverage

Author: pmac
Created: 2026-10-19
Modified: 2026-10-19

Dependencies:
- pytest: 7.4.3+ - Testing framework

Usage:
    # Run all tests
    pytest tests/

    # Skip the exhaustive oracles
    pytest tests/ -m "not slow"

Notes:
    - Shared fixtures in conftest.py
"""

"""
Module: tests.conftest
Description: Shared fixtures: binary-form and planar weight systems, example
             data paths, an isolated result cache and a click runner

Author: pmac
Created: 2026-10-19
Modified: 2026-10-19

Dependencies:
- pytest: 7.4.3+ - Testing framework and fixture management
- click: 8.1.7+ - CliRunner for command tests

Usage:
    # Fixtures are automatically available in all test files
    def test_example(sym_n, runner, isolated_cache):
        ws = sym_n(4)
        result = runner.invoke(cli, ["p1", "--n", "4", "--points", "0,0,0,1"])

Notes:
    - isolated_cache points GITSTRATA_CACHE_DIR at a tmp_path directory
    - runner keeps stderr separate so stdout is the bare JSON report
"""

import json
import os
from typing import Callable

import pytest
from click.testing import CliRunner

from gitstrata.config import Settings
from gitstrata.hkkn import WeightSystem, sym_n_weight_system
from gitstrata.rational import InnerProduct, QVector

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
EXAMPLES_DIR = os.path.join(REPO_ROOT, "data", "examples")


@pytest.fixture
def sym_n() -> Callable[[int], WeightSystem]:
    """Factory for the SL2 weight system on binary forms of degree n"""
    return sym_n_weight_system


@pytest.fixture
def sym4() -> WeightSystem:
    return sym_n_weight_system(4)


@pytest.fixture
def planar() -> WeightSystem:
    """Two orthogonal weights in the plane, no Weyl group"""
    return WeightSystem(
        weights=(QVector.of(1, 0), QVector.of(0, 1)),
        ip=InnerProduct.standard(2),
    )


@pytest.fixture
def examples_dir() -> str:
    return EXAMPLES_DIR


@pytest.fixture
def example_path() -> Callable[[str, str], str]:
    def _path(kind: str, name: str) -> str:
        return os.path.join(EXAMPLES_DIR, kind, name)

    return _path


@pytest.fixture
def isolated_cache(tmp_path, monkeypatch):
    """Point the result cache at a fresh temporary directory"""
    cache_dir = tmp_path / "cache"
    monkeypatch.setenv("GITSTRATA_CACHE_DIR", str(cache_dir))
    monkeypatch.setenv("GITSTRATA_CACHE_ENABLED", "true")
    return cache_dir


@pytest.fixture
def cache_settings(isolated_cache) -> Settings:
    return Settings()


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner(mix_stderr=False)


@pytest.fixture
def write_json(tmp_path) -> Callable[[str, object], str]:
    """Write a JSON document under tmp_path and return its path"""

    def _write(name: str, data: object) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return _write

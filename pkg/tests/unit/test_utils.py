"""
Module: tests.unit.test_utils
Description: Unit tests for canonical JSON, content hashing and the result
             cache (store, lookup, listing, retention cleanup)

Author: pmac
Created: 2026-10-19
Modified: 2026-10-19

Dependencies:
- pytest: 7.4.3+ - Testing framework

Usage:
    pytest tests/unit/test_utils.py -v

Notes:
    - Every cache test runs against a tmp_path cache directory
"""

import os
import time
from datetime import datetime, timedelta
from unittest.mock import patch

from gitstrata.config import Settings
from gitstrata.utils import (
    cache_key,
    cache_lookup,
    cache_store,
    canonical_json,
    cleanup_old_cache_entries,
    clear_cache,
    content_hash,
    format_bytes,
    get_cache_files_to_delete,
    list_cache_entries,
)


class TestCanonicalJSON:
    """Test byte-stable serialisation and hashing"""

    def test_key_order_irrelevant(self):
        """Test that dict order does not change the bytes"""
        assert canonical_json({"b": 1, "a": [1, 2]}) == canonical_json({"a": [1, 2], "b": 1})

    def test_trailing_newline(self):
        """Test the final newline"""
        assert canonical_json({}).endswith("\n")

    def test_unicode_kept(self):
        """Test that epsilon is written literally"""
        assert "ε" in canonical_json({"w": "1-ε"})

    def test_content_hash_is_length_prefixed(self):
        """Test that part boundaries matter"""
        assert content_hash("ab", "c") != content_hash("a", "bc")
        assert content_hash("x") == content_hash(b"x")
        assert len(content_hash("x")) == 64

    def test_cache_key_depends_on_version(self):
        """Test that a new engine version invalidates entries"""
        assert cache_key("index-set", "{}", "0.1.0") != cache_key("index-set", "{}", "0.2.0")
        assert cache_key("index-set", "{}", "0.1.0") != cache_key("p1", "{}", "0.1.0")


class TestResultCache:
    """Test cache store and lookup"""

    def test_round_trip(self, cache_settings):
        """Test that a stored payload is found again"""
        key = cache_key("index-set", "raw", cache_settings.engine_version)
        assert cache_lookup(key, cache_settings) is None
        path = cache_store(key, "index-set", {"betas": ["0", "2"]}, cache_settings)
        assert path is not None and path.exists()
        assert cache_lookup(key, cache_settings) == {"betas": ["0", "2"]}

    def test_disabled_cache(self, isolated_cache, monkeypatch):
        """Test that a disabled cache neither stores nor finds"""
        monkeypatch.setenv("GITSTRATA_CACHE_ENABLED", "false")
        settings = Settings()
        assert cache_store("k", "index-set", {"betas": []}, settings) is None
        assert cache_lookup("k", settings) is None
        assert not isolated_cache.exists()

    def test_unreadable_entry_is_a_miss(self, cache_settings, isolated_cache):
        """Test that a corrupt file is ignored"""
        isolated_cache.mkdir(parents=True)
        (isolated_cache / "bad.json").write_text("{not json", encoding="utf-8")
        assert cache_lookup("bad", cache_settings) is None

    def test_list_entries(self, cache_settings):
        """Test the listing with command names"""
        cache_store("k1", "index-set", {"betas": []}, cache_settings)
        cache_store("k2", "index-set", {"betas": ["0"]}, cache_settings)
        entries = list_cache_entries(cache_settings)
        assert sorted(e.key for e in entries) == ["k1", "k2"]
        assert all(e.command == "index-set" and e.size_bytes > 0 for e in entries)

    def test_list_missing_dir(self, cache_settings):
        """Test an absent cache directory"""
        assert list_cache_entries(cache_settings) == []

    def test_clear(self, cache_settings):
        """Test removing everything"""
        cache_store("k1", "index-set", {"betas": []}, cache_settings)
        assert clear_cache(cache_settings) == 1
        assert list_cache_entries(cache_settings) == []
        assert clear_cache(cache_settings) == 0


class TestCacheCleanup:
    """Test retention-based cleanup"""

    def test_files_to_delete_uses_mtime(self, tmp_path):
        """Test on-disk files against the retention window"""
        old = tmp_path / "old.json"
        new = tmp_path / "new.json"
        old.write_text("{}", encoding="utf-8")
        new.write_text("{}", encoding="utf-8")
        stale = (datetime.now() - timedelta(days=10)).timestamp()
        os.utime(old, (stale, stale))

        files = [str(old), str(new)]
        assert get_cache_files_to_delete(files, retention_days=7) == [str(old)]

    @patch("gitstrata.utils.os.path.getmtime")
    def test_files_to_delete_from_paths(self, mock_getmtime):
        """Test that plain paths are stat'ed"""
        mock_getmtime.side_effect = [
            (datetime.now() - timedelta(days=40)).timestamp(),
            OSError("gone"),
        ]
        assert get_cache_files_to_delete(["/c/a.json", "/c/b.json"]) == ["/c/a.json"]

    def test_cleanup_removes_old_entries(self, cache_settings):
        """Test that only entries past retention are deleted"""
        old = cache_store("old", "index-set", {"betas": []}, cache_settings)
        cache_store("new", "index-set", {"betas": []}, cache_settings)
        stale = time.time() - 60 * 86400
        os.utime(old, (stale, stale))

        result = cleanup_old_cache_entries(cache_settings)

        assert result == {"deleted_count": 1, "error": None}
        assert [e.key for e in list_cache_entries(cache_settings)] == ["new"]

    def test_cleanup_missing_dir(self, cache_settings):
        """Test cleanup with nothing cached"""
        assert cleanup_old_cache_entries(cache_settings) == {"deleted_count": 0, "error": None}


class TestUtilityFunctions:
    """Test various utility functions"""

    def test_format_bytes(self):
        """Test byte formatting"""
        assert format_bytes(0) == "0.0 B"
        assert format_bytes(1536) == "1.5 KB"
        assert format_bytes(1024 * 1024) == "1.0 MB"
        assert format_bytes(1023) == "1023.0 B"

"""
Module: utils
Description: Canonical JSON, content hashing and the on-disk cache of engine
             results with listing and retention-based cleanup

Author: pmac
Created: 2026-10-19
Modified: 2026-10-19

Dependencies:
- hashlib: 3.9+ - SHA-256 content hashes
- datetime: 3.9+ - Timestamp and retention operations
- structlog: 23.2.0+ - Cache hit/miss events

Usage:
    from gitstrata.utils import cache_key, cache_lookup, cache_store, canonical_json

    key = cache_key("index-set", raw_bytes, settings.engine_version)
    payload = cache_lookup(key, settings)
    if payload is None:
        cache_store(key, "index-set", {"betas": [...]}, settings)

Notes:
    - Cache entries are JSON files named <key>.json in settings.cache_dir
    - Keys mix the command, the input bytes and the engine version
    - Cleanup respects settings.cache_retention_days
"""

import hashlib
import json
import os
from datetime import datetime, timedelta
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import structlog

from .config import Settings
from .schemas import CacheEntryInfo

logger = structlog.get_logger(__name__)

CACHE_SUFFIX = ".json"


def canonical_json(data: Any) -> str:
    """Byte-stable JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def content_hash(*parts: Union[str, bytes]) -> str:
    digest = hashlib.sha256()
    for part in parts:
        data = part.encode("utf-8") if isinstance(part, str) else part
        digest.update(len(data).to_bytes(8, "big"))
        digest.update(data)
    return digest.hexdigest()


def cache_key(command: str, raw_input: Union[str, bytes], engine_version: str) -> str:
    return content_hash(command, raw_input, engine_version)


def _cache_path(key: str, settings: Settings) -> Path:
    return settings.resolved_cache_dir() / f"{key}{CACHE_SUFFIX}"


def cache_lookup(key: str, settings: Settings) -> Optional[Dict[str, Any]]:
    if not settings.cache_enabled:
        return None
    path = _cache_path(key, settings)
    if not path.exists():
        logger.info("cache.miss", key=key[:12])
        return None
    try:
        entry = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        logger.warning("cache.unreadable", key=key[:12], error=str(e))
        return None
    logger.info("cache.hit", key=key[:12])
    payload: Dict[str, Any] = entry["payload"]
    return payload


def cache_store(
    key: str, command: str, payload: Dict[str, Any], settings: Settings
) -> Optional[Path]:
    """Write an entry; caching failures are logged and never fatal."""
    if not settings.cache_enabled:
        return None
    path = _cache_path(key, settings)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(
            canonical_json({"command": command, "key": key, "payload": payload}),
            encoding="utf-8",
        )
        os.replace(tmp, path)
    except OSError as e:
        logger.warning("cache.store_failed", key=key[:12], error=str(e))
        return None
    logger.info("cache.stored", key=key[:12], command=command)
    return path


def list_cache_entries(settings: Settings) -> List[CacheEntryInfo]:
    cache_dir = settings.resolved_cache_dir()
    if not cache_dir.exists():
        return []

    entries = []
    for path in cache_dir.glob(f"*{CACHE_SUFFIX}"):
        try:
            command = json.loads(path.read_text(encoding="utf-8")).get("command", "?")
        except (OSError, json.JSONDecodeError):
            command = "?"
        stat_info = path.stat()
        entries.append(
            CacheEntryInfo(
                key=path.stem,
                command=command,
                size_bytes=stat_info.st_size,
                created_at=datetime.fromtimestamp(stat_info.st_mtime),
            )
        )
    entries.sort(key=lambda e: e.created_at, reverse=True)
    return entries


def get_cache_files_to_delete(cache_files: List[str], retention_days: int = 30) -> List[str]:
    """Paths whose modification time is older than the retention window."""
    cutoff_date = datetime.now() - timedelta(days=retention_days)
    files_to_delete = []

    for path in cache_files:
        try:
            if datetime.fromtimestamp(os.path.getmtime(path)) < cutoff_date:
                files_to_delete.append(path)
        except (ValueError, OSError):
            continue

    return files_to_delete


def cleanup_old_cache_entries(settings: Settings) -> Dict[str, Union[int, str, None]]:
    """Remove cache entries older than settings.cache_retention_days."""
    cache_dir = settings.resolved_cache_dir()
    if not cache_dir.exists():
        return {"deleted_count": 0, "error": None}

    try:
        stale = get_cache_files_to_delete(
            [str(p) for p in cache_dir.glob(f"*{CACHE_SUFFIX}")],
            settings.cache_retention_days,
        )
        for path in stale:
            os.unlink(path)
            logger.info("cache.deleted", file=os.path.basename(path))
        return {"deleted_count": len(stale), "error": None}
    except OSError as e:
        logger.error("cache.cleanup_failed", error=str(e))
        return {"deleted_count": 0, "error": str(e)}


def clear_cache(settings: Settings) -> int:
    cache_dir = settings.resolved_cache_dir()
    if not cache_dir.exists():
        return 0
    removed = 0
    for path in cache_dir.glob(f"*{CACHE_SUFFIX}"):
        path.unlink()
        removed += 1
    logger.info("cache.cleared", removed=removed)
    return removed


def format_bytes(bytes_value: int) -> str:
    """Format bytes into human readable format"""
    value: float = float(bytes_value)
    for unit in ["B", "KB", "MB", "GB", "TB"]:
        if value < 1024.0:
            return f"{value:.1f} {unit}"
        value /= 1024.0
    return f"{value:.1f} PB"

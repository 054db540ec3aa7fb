"""
Module: config
Description: Configuration management and settings validation using Pydantic
             for environment-based configuration

Author: pmac
Created: 2026-10-19
Modified: 2026-10-19

Dependencies:
- pydantic: 2.5.2+ - Data validation and settings management
- pydantic-settings: 2.0+ - Environment variable configuration

Usage:
    from gitstrata.config import settings

    cache_dir = settings.resolved_cache_dir()
    workers = settings.index_set_workers

Notes:
    - Settings load from a .env file when present
    - Environment variables use the GITSTRATA_ prefix and override .env values
    - GITSTRATA_CACHE_DIR relocates the index-set cache
"""

from pathlib import Path

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

ENGINE_VERSION = "0.1.0"


class Settings(BaseSettings):
    """Application settings with environment variable support"""

    model_config = SettingsConfigDict(
        env_file=".env", env_prefix="GITSTRATA_", case_sensitive=False, extra="ignore"
    )

    # App metadata
    app_name: str = "gitstrata"
    engine_version: str = Field(default=ENGINE_VERSION)

    # Cache
    cache_dir: str = Field(default="~/.cache/gitstrata")
    cache_enabled: bool = Field(default=True)
    cache_retention_days: int = Field(default=30, ge=0)

    # Logging
    logging_level: str = Field(default="WARNING")
    log_format: str = Field(default="console")

    # Engines
    index_set_workers: int = Field(default=1, ge=1)

    @field_validator("logging_level", mode="before")
    @classmethod
    def normalize_level(cls, v: object) -> str:
        return str(v).upper()

    @field_validator("log_format")
    @classmethod
    def check_log_format(cls, v: str) -> str:
        if v not in ("console", "json"):
            raise ValueError("log_format must be 'console' or 'json'")
        return v

    def resolved_cache_dir(self) -> Path:
        return Path(self.cache_dir).expanduser()


# Global settings instance
settings = Settings()

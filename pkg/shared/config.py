"""Shared configuration."""
from pathlib import Path
from typing import Literal

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Process-wide settings for the CLI and batch runners."""

    # Output
    output_dir: Path = Path("results")

    # Execution
    workers: int = 1

    # Logging
    log_level: str = "INFO"
    log_format: Literal["plain", "json"] = "plain"

    class Config:
        env_file = ".env"
        env_prefix = "ZIGZAG_"
        case_sensitive = False


def get_settings() -> Settings:
    """Load settings from the environment (and .env, if present)."""
    return Settings()

"""Provides configuration functionality for loading resource limits from the environment."""

from functools import lru_cache

from pydantic import Field, ValidationInfo, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class EnvConfig(BaseSettings):
    """Resource limits and log level loaded from environment variables.

    Values come from the process environment or a ``.env`` file. The limits guard
    the places where exact integer computations can grow without bound.

    """

    max_matrix: int = Field(
        default=10000,
        description="Largest rows*cols accepted by the Smith normal form",
        alias="HOMKK_MAX_MATRIX",
    )
    max_n: int = Field(default=6, description="Largest n accepted for NT-modules", alias="HOMKK_MAX_N")
    iso_search_limit: int = Field(
        default=65536,
        description="Largest Hom group order searched for module isomorphisms",
        alias="HOMKK_ISO_SEARCH_LIMIT",
    )
    log_level: str = Field(default="WARNING", description="Log level used by the CLI", alias="HOMKK_LOG_LEVEL")

    @field_validator("max_matrix", "max_n", "iso_search_limit")
    @classmethod
    def validate_positive(cls, v: int, info: ValidationInfo) -> int:
        """Validate that a limit is a positive integer.

        Parameters
        ----------
        v : int
            The limit value to validate
        info : ValidationInfo
            Validation information containing field metadata

        Returns
        -------
        int
            The validated limit

        Raises
        ------
        ValueError
            If the limit is zero or negative

        """
        if v <= 0:
            msg: str = f"{info.field_name} must be positive, got {v}"
            raise ValueError(msg)
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Normalize the log level name and reject unknown names."""
        level = v.strip().upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            msg: str = f"unknown log level {v!r}"
            raise ValueError(msg)
        return level

    # Reads .env and looks for the HOMKK_* variables
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",  # Ignore extra fields from environment
        populate_by_name=True,
    )


@lru_cache(maxsize=1)
def get_env_settings() -> EnvConfig:
    """Load and cache the environment settings.

    Returns
    -------
        EnvConfig: Settings object with validated resource limits, loaded from
        environment variables or the .env file.

    """
    return EnvConfig()

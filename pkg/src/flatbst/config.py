"""
Runtime configuration using Pydantic Settings
"""
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Settings loaded from environment variables (or a local .env file)"""

    # Parallel build
    FLATBST_THREADS: int = Field(default=1, ge=1)

    # Elements per scratch buffer while streaming the index loop
    FLATBST_BLOCK_SIZE: int = Field(default=1 << 16, ge=64)

    # Logging
    FLATBST_LOG_LEVEL: str = "WARNING"

    # Benchmark
    FLATBST_BENCH_REPEAT: int = Field(default=5, ge=5)

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    @field_validator("FLATBST_BLOCK_SIZE")
    @classmethod
    def _power_of_two(cls, value: int) -> int:
        if value & (value - 1):
            raise ValueError("FLATBST_BLOCK_SIZE must be a power of two")
        return value

    @field_validator("FLATBST_LOG_LEVEL")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown log level: {value}")
        return level


def load_settings() -> Settings:
    """Read the environment again (the CLI does this on every invocation)."""
    return Settings()


settings = load_settings()

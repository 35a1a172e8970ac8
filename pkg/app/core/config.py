"""
Application configuration using Pydantic settings
"""

from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings with validation"""

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_JSON: bool = False

    # Application
    APP_NAME: str = "NPDC Lab"

    # Output
    OUTPUT_DIR: str = "results"

    # Experiment protocol defaults
    DEFAULT_BUDGET: int = 3_000_000
    DEFAULT_REPETITIONS: int = 20
    DEFAULT_LAMBDA: int = 1
    DEFAULT_WORKERS: int = 1
    EXPERIMENT_BATCH_SIZE: int = 4  # Repetitions executed concurrently

    # Trajectory sampling
    TRAJECTORY_INTERVAL: int = 1000  # Log a point at least every N evaluations

    # Statistics
    SIGNIFICANCE_LEVEL: float = 0.05
    EXACT_TEST_MAX_SIZE: int = 16  # n + m at or below this uses exact enumeration

    # Benchmark generator
    SHIFT_MARGIN: float = 0.8  # Shift vector drawn inside this fraction of the range
    SINGLE_GROUP_WEIGHT: float = 1e6

    # Decomposition
    DG_DELTA_FRACTION: float = 0.1
    DG_EPSILON_SCALE: float = 1e-9
    RANDOM_GROUP_COUNT: int = 10

    # NPDC
    META_UPDATE_REJECTED: bool = False  # Also adapt variables whose offspring was rejected at pre-selection

    # Speed-up measurement
    SPEEDUP_MODE: Literal["simulated", "threads"] = "simulated"

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        # Allow extra fields from .env that aren't defined here
        extra="allow"
    )


# Create settings instance
settings = Settings()

"""
Application configuration settings

This module defines the toolkit configuration using Pydantic Settings.
Settings can be overridden via environment variables or .env file. CLI flags
and API request bodies override the experiment defaults for a single run.

Environment Variables:
    PROJECT_NAME: Name of the project (default: "RRULES Bench")
    VERSION: Toolkit version (default: "0.1.0")
    API_V1_STR: API v1 prefix (default: "/api/v1")
    ALLOWED_ORIGINS: List of allowed CORS origins for the HTTP API
    ENVIRONMENT: "development" (console logs) or "production" (JSON logs)
    LOG_LEVEL: Minimum log level (default: "INFO")
    DEFAULT_N_BINS: Equal-width bins for numeric columns (default: 7)
    DEFAULT_TEST_FRACTION: Held-out share of rows (default: 0.2)
    DEFAULT_SEED: Seed of the split shuffle (default: 1)
    DEFAULT_TIMING_REPEATS: Induction runs per timing median (default: 3)
    MAX_SUITE_WORKERS: Thread pool size for untimed suites (default: 4)
    DATA_DIR: Base directory for relative dataset paths (default: ".")

Example .env file:
    ENVIRONMENT="production"
    LOG_LEVEL="DEBUG"
    DEFAULT_SEED=7
    DATA_DIR="/data/uci"
"""

from typing import List
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Toolkit settings

    Pydantic Settings model that loads configuration from environment
    variables or .env file. All settings are validated and type-checked.

    Attributes:
        PROJECT_NAME (str): The name of the project/API
        VERSION (str): Current version of the toolkit
        API_V1_STR (str): URL prefix for API v1 endpoints
        ALLOWED_ORIGINS (List[str]): List of allowed CORS origins
        ENVIRONMENT (str): Selects the log renderer
        LOG_LEVEL (str): Minimum level passed to the filtering logger
        DEFAULT_N_BINS (int): Bins used when a numeric column is discretized
        DEFAULT_TEST_FRACTION (float): Fraction of rows held out for testing
        DEFAULT_SEED (int): Seed of the split shuffle
        DEFAULT_TIMING_REPEATS (int): Runs per reported induction time
        MAX_SUITE_WORKERS (int): Worker threads for suites run without timing
        DATA_DIR (str): Directory that relative dataset paths resolve against
    """

    PROJECT_NAME: str = "RRULES Bench"
    VERSION: str = "0.1.0"
    API_V1_STR: str = "/api/v1"

    # CORS
    ALLOWED_ORIGINS: List[str] = [
        "http://localhost:3000",
        "http://localhost:8000",
    ]

    # Logging
    ENVIRONMENT: str = "development"
    LOG_LEVEL: str = "INFO"

    # Experiment defaults
    DEFAULT_N_BINS: int = 7
    DEFAULT_TEST_FRACTION: float = 0.2
    DEFAULT_SEED: int = 1
    DEFAULT_TIMING_REPEATS: int = 3

    # Suite execution
    MAX_SUITE_WORKERS: int = 4

    DATA_DIR: str = "."

    model_config = SettingsConfigDict(
        env_file=".env",
        case_sensitive=True,
        extra="allow"
    )


# Global settings instance
settings = Settings()

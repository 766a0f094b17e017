"""
Configuration management for nilcayley.
Loads guardrails and defaults from environment variables with proper validation.
"""

import os
import logging
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


class Settings:
    """Application settings loaded from environment variables."""

    def __init__(self):
        # Findim guardrails
        self.max_dim: int = self._int('NILCAYLEY_MAX_DIM', 4096)
        self.exhaustive_dim: int = self._int('NILCAYLEY_EXHAUSTIVE_DIM', 40)

        # Determinant theory caps
        self.max_n: int = self._int('NILCAYLEY_MAX_N', 5)
        self.max_k: int = self._int('NILCAYLEY_MAX_K', 4)

        # Parser
        self.max_exponent: int = self._int('NILCAYLEY_MAX_EXPONENT', 64)

        # Runs
        self.workers: int = self._int('NILCAYLEY_WORKERS', 4)
        self.default_seed: int = self._int('NILCAYLEY_SEED', 42)

        # Logging
        self.log_level: str = os.getenv('LOG_LEVEL', 'WARNING').upper()

        self._validate()

    def _int(self, name: str, default: int):
        raw = os.getenv(name)
        if raw is None or raw.strip() == '':
            return default
        try:
            return int(raw)
        except ValueError:
            # Reported together with the other problems in _validate
            self._bad = getattr(self, '_bad', []) + [name]
            return default

    def _validate(self):
        """Validate that every variable parsed and lies in range."""
        bad_fields = list(getattr(self, '_bad', []))
        positive_fields = [
            ('NILCAYLEY_MAX_DIM', self.max_dim),
            ('NILCAYLEY_EXHAUSTIVE_DIM', self.exhaustive_dim),
            ('NILCAYLEY_MAX_N', self.max_n),
            ('NILCAYLEY_MAX_K', self.max_k),
            ('NILCAYLEY_MAX_EXPONENT', self.max_exponent),
            ('NILCAYLEY_WORKERS', self.workers),
        ]
        bad_fields += [field for field, value in positive_fields if value < 1]

        if self.log_level not in LOG_LEVELS:
            bad_fields.append('LOG_LEVEL')

        if bad_fields:
            raise ValueError(f"Invalid environment variables: {', '.join(bad_fields)}")

    @property
    def logging_level(self) -> int:
        """Numeric level for the logging module."""
        return getattr(logging, self.log_level)


# Global settings instance
settings = Settings()

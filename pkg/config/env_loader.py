"""
Environment Configuration Loader for rauzykit

This module loads and validates the environment variables that control
numeric tolerances, multiprecision working precision and logging for
every toolkit operation.
"""

import os
import logging
from typing import Dict, Any, Optional
from dotenv import load_dotenv
from pathlib import Path

import mpmath


class EnvironmentConfig:
    """
    Manages environment configuration for rauzykit.
    Loads variables from .env file and provides validation.
    """

    def __init__(self, env_file: Optional[str] = None):
        """
        Initialize environment configuration.

        Args:
            env_file: Path to .env file. If None, looks for .env in project root.
        """
        self.env_file = env_file or self._find_env_file()
        self.config = {}
        self._load_environment()
        self._setup_logging()
        self._apply_precision()

    def _find_env_file(self) -> str:
        """Find .env file in project root."""
        current_dir = Path(__file__).resolve()

        for parent in current_dir.parents:
            env_path = parent / '.env'
            if env_path.exists():
                return str(env_path)

        return '.env'

    def _load_environment(self) -> None:
        """Load environment variables from .env file."""
        load_dotenv(self.env_file)

        self.config = {
            # Logging
            'log_level': os.getenv('RAUZYKIT_LOG_LEVEL', 'INFO'),
            'log_file_path': os.getenv('RAUZYKIT_LOG_FILE_PATH', ''),

            # Arithmetic
            'float_tie_tolerance': float(os.getenv('RAUZYKIT_FLOAT_TIE_TOLERANCE', '1e-12')),
            'keane_tolerance': float(os.getenv('RAUZYKIT_KEANE_TOLERANCE', '1e-12')),
            'mp_dps': int(os.getenv('RAUZYKIT_MP_DPS', '80')),

            # Induction and renormalization
            'zorich_cap': int(os.getenv('RAUZYKIT_ZORICH_CAP', '1000000')),
            'reorthonormalize_every': int(os.getenv('RAUZYKIT_REORTHONORMALIZE_EVERY', '1')),
            'slow_fraction': float(os.getenv('RAUZYKIT_SLOW_FRACTION', '0.05')),

            # Solver
            'orthogonality_threshold': float(os.getenv('RAUZYKIT_ORTHOGONALITY_THRESHOLD', '1e-10')),

            # Storage
            'output_dir': os.getenv('RAUZYKIT_OUTPUT_DIR', './runs'),
        }

        self._validate_config()

    def _validate_config(self) -> None:
        """Validate configuration parameters."""
        positive_fields = [
            'float_tie_tolerance',
            'keane_tolerance',
            'orthogonality_threshold',
            'slow_fraction',
        ]
        invalid = [name for name in positive_fields if not self.config[name] > 0]
        if invalid:
            raise ValueError(f"Configuration values must be positive: {invalid}")

        if self.config['mp_dps'] < 20:
            raise ValueError(f"RAUZYKIT_MP_DPS must be at least 20, got {self.config['mp_dps']}")
        if self.config['zorich_cap'] < 1:
            raise ValueError(f"RAUZYKIT_ZORICH_CAP must be >= 1, got {self.config['zorich_cap']}")
        if self.config['reorthonormalize_every'] < 1:
            raise ValueError("RAUZYKIT_REORTHONORMALIZE_EVERY must be >= 1")

        level = self.config['log_level'].upper()
        if not isinstance(getattr(logging, level, None), int):
            raise ValueError(f"Invalid log level: {self.config['log_level']}")

    def _setup_logging(self) -> None:
        """Setup logging configuration."""
        log_level = getattr(logging, self.config['log_level'].upper())
        log_file = self.config['log_file_path']

        handlers = [logging.StreamHandler()]
        if log_file:
            Path(log_file).parent.mkdir(parents=True, exist_ok=True)
            handlers.append(logging.FileHandler(log_file))

        logging.basicConfig(
            level=log_level,
            format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            handlers=handlers
        )

        self.logger = logging.getLogger(__name__)
        self.logger.debug(f"Environment configuration loaded from: {self.env_file}")

    def _apply_precision(self) -> None:
        """Raise the process-wide mpmath working precision to the configured digits."""
        if mpmath.mp.dps < self.config['mp_dps']:
            mpmath.mp.dps = self.config['mp_dps']

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get configuration value by key.

        Args:
            key: Configuration key
            default: Default value if key not found

        Returns:
            Configuration value
        """
        return self.config.get(key, default)

    def get_tolerances(self) -> Dict[str, float]:
        """Get the float-mode tolerances."""
        return {
            'tie': self.config['float_tie_tolerance'],
            'keane': self.config['keane_tolerance'],
            'orthogonality': self.config['orthogonality_threshold'],
        }

    def get_output_dir(self) -> Path:
        """Get the default directory for run records."""
        return Path(self.config['output_dir'])

    def get_logger(self) -> logging.Logger:
        """Get configured logger instance."""
        return self.logger

    def print_config_summary(self) -> None:
        """Log a configuration summary."""
        self.logger.info("Configuration Summary:")
        for key, value in self.config.items():
            self.logger.info(f"  {key}: {value}")


# Global configuration instance
_config_instance = None

def get_config() -> EnvironmentConfig:
    """Get global configuration instance (singleton pattern)."""
    global _config_instance
    if _config_instance is None:
        _config_instance = EnvironmentConfig()
    return _config_instance


def reset_config() -> None:
    """Drop the cached configuration so the next get_config() reloads it."""
    global _config_instance
    _config_instance = None


if __name__ == "__main__":
    config = EnvironmentConfig()
    config.print_config_summary()

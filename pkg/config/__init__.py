"""Runtime configuration for rauzykit."""

from config.env_loader import EnvironmentConfig, get_config, reset_config

__all__ = ['EnvironmentConfig', 'get_config', 'reset_config']

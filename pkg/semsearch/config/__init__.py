"""Configuration module for semsearch

Contains all configuration-related components:
- Settings management and validation (master_config.yml + environment)
- Pipeline configuration (key=value file, flag overrides, range checks)
"""

from .settings import ConfigValidationError, Settings, settings
from .pipeline import PipelineConfig, load_pipeline_config

__all__ = [
    "Settings",
    "ConfigValidationError",
    "settings",
    "PipelineConfig",
    "load_pipeline_config",
]

"""
Core functionality for semsearch

This package provides:
- Custom exceptions and error handling
- Logging management system
- Dataset validation and encoding detection
- Hashing, escaping and atomic file helpers
"""

from .exceptions import (
    ArtifactError,
    ArtifactWriteError,
    DatasetError,
    EmptyCorpusError,
    GoldSetError,
    IndexBuildError,
    InvalidQueryError,
    NTriplesParseError,
    SemSearchError,
    StaleArtifactError,
)
from .logger import (
    LoggingManager,
    StructuredFormatter,
    get_logger,
    log_analysis_step,
    log_performance_metric,
    log_print,
    log_structured,
    log_user_input,
)
from .utils import (
    escape_field,
    format_file_size,
    memory_usage_mb,
    sha256_file,
    unescape_field,
    write_text_atomic,
)

__all__ = [
    # Exceptions
    "SemSearchError",
    "DatasetError",
    "NTriplesParseError",
    "EmptyCorpusError",
    "ArtifactError",
    "StaleArtifactError",
    "ArtifactWriteError",
    "IndexBuildError",
    "InvalidQueryError",
    "GoldSetError",
    # Logging
    "LoggingManager",
    "StructuredFormatter",
    "get_logger",
    "log_print",
    "log_user_input",
    "log_analysis_step",
    "log_performance_metric",
    "log_structured",
    # Utilities
    "memory_usage_mb",
    "format_file_size",
    "sha256_file",
    "escape_field",
    "unescape_field",
    "write_text_atomic",
]

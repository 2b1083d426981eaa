"""Centralized logging for semsearch.

All module loggers live under the ``semsearch`` namespace. The manager is
configured from the ``logging`` section of master_config.yml; ``DEBUG=1`` in
the environment forces debug level on every handler.
"""

import json
import logging
import logging.handlers
import os
import sys
from pathlib import Path
from typing import Any, Dict, Optional

from semsearch.config.settings import settings

ROOT_LOGGER_NAME = "semsearch"
DEFAULT_CONSOLE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DEFAULT_FILE_FORMAT = (
    "%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s"
)
DEBUG_CONSOLE_FORMAT = (
    "%(asctime)s - %(name)s - %(levelname)s - "
    "[%(module)s:%(funcName)s:%(lineno)d] - %(message)s"
)


def _debug_mode() -> bool:
    return os.environ.get("DEBUG") == "1"


class StructuredFormatter(logging.Formatter):
    """Formatter that emits one JSON object per record when structured_debug is on."""

    def format(self, record: logging.LogRecord) -> str:
        if not settings.get("logging.app.structured_debug", False):
            return super().format(record)

        log_data: Dict[str, Any] = {
            "timestamp": self.formatTime(record),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
        }
        extra = getattr(record, "extra_data", None)
        if isinstance(extra, dict):
            log_data.update(extra)
        return json.dumps(log_data, default=str)


class LoggingManager:
    """Owns the handlers attached to the ``semsearch`` logger."""

    def __init__(self) -> None:
        self._loggers: Dict[str, logging.Logger] = {}
        self._initialized = False
        self.log_file: Optional[Path] = None

    def initialize(self) -> None:
        if self._initialized:
            return

        package_logger = logging.getLogger(ROOT_LOGGER_NAME)
        for handler in package_logger.handlers[:]:
            package_logger.removeHandler(handler)
        package_logger.propagate = False

        level_name = str(settings.get("logging.level", "INFO")).upper()
        if _debug_mode():
            level_name = "DEBUG"
        package_logger.setLevel(getattr(logging, level_name, logging.INFO))

        if settings.get("logging.console.enabled", True):
            self._setup_console_logging(package_logger)
        if settings.get("logging.file.enabled", True):
            self._setup_file_logging(package_logger)

        self._initialized = True

    def reset(self) -> None:
        """Drop handlers so the next logger request reconfigures from settings."""
        package_logger = logging.getLogger(ROOT_LOGGER_NAME)
        for handler in package_logger.handlers[:]:
            package_logger.removeHandler(handler)
            handler.close()
        self._loggers.clear()
        self._initialized = False
        self.log_file = None

    def _setup_console_logging(self, target: logging.Logger) -> None:
        console_level = str(settings.get("logging.console.level", "WARNING"))
        console_format = settings.get("logging.console.format", DEFAULT_CONSOLE_FORMAT)

        if _debug_mode():
            console_level = "DEBUG"
            console_format = DEBUG_CONSOLE_FORMAT

        # stderr keeps stdout clean for --json output
        console_handler = logging.StreamHandler()
        console_handler.setLevel(
            getattr(logging, console_level.upper(), logging.WARNING)
        )
        console_handler.setFormatter(StructuredFormatter(console_format))
        target.addHandler(console_handler)

    def _setup_file_logging(self, target: logging.Logger) -> None:
        project_root = Path(__file__).parent.parent.parent
        log_dir = project_root / "logs"
        try:
            log_dir.mkdir(exist_ok=True)
        except OSError:
            # read-only install: console logging only
            return

        log_file = log_dir / settings.get("logging.file.filename", "semsearch.log")
        file_handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=settings.get("logging.file.max_bytes", 10485760),
            backupCount=settings.get("logging.file.backup_count", 5),
            encoding="utf-8",
        )
        file_level = str(settings.get("logging.file.level", "DEBUG"))
        file_handler.setLevel(getattr(logging, file_level.upper(), logging.DEBUG))
        file_handler.setFormatter(
            StructuredFormatter(
                settings.get("logging.file.format", DEFAULT_FILE_FORMAT)
            )
        )
        target.addHandler(file_handler)
        self.log_file = log_file

    def get_logger(self, name: str) -> logging.Logger:
        """Get or create a logger below the ``semsearch`` namespace."""
        if not self._initialized:
            self.initialize()

        qualified = (
            name
            if name == ROOT_LOGGER_NAME or name.startswith(ROOT_LOGGER_NAME + ".")
            else f"{ROOT_LOGGER_NAME}.{name}"
        )
        if qualified not in self._loggers:
            self._loggers[qualified] = logging.getLogger(qualified)
        return self._loggers[qualified]

    def _log_if_enabled(
        self,
        flag: str,
        default: bool,
        logger_name: str,
        message: str,
        extra_data: Optional[Dict[str, Any]],
    ) -> None:
        if not settings.get(flag, default):
            return
        logger = self.get_logger(logger_name)
        if extra_data:
            logger.info(message, extra={"extra_data": extra_data})
        else:
            logger.info(message)

    def log_user_interaction(
        self, message: str, extra_data: Optional[Dict[str, Any]] = None
    ) -> None:
        self._log_if_enabled(
            "logging.app.user_interaction",
            True,
            "user_interaction",
            message,
            extra_data,
        )

    def log_analysis_progress(
        self, message: str, extra_data: Optional[Dict[str, Any]] = None
    ) -> None:
        self._log_if_enabled(
            "logging.app.analysis_progress", True, "progress", message, extra_data
        )

    def log_performance(self, message: str, metrics: Dict[str, Any]) -> None:
        self._log_if_enabled(
            "logging.app.performance_metrics", False, "performance", message, metrics
        )


logging_manager = LoggingManager()


def get_logger(name: str) -> logging.Logger:
    """Convenience function to get a logger."""
    return logging_manager.get_logger(name)


def log_print(message: str, level: str = "INFO", logger_name: str = "cli") -> None:
    """Print message to console and log it.

    Warnings and errors go to stderr so stdout stays machine-readable.
    """
    to_stderr = level.upper() in ("WARNING", "ERROR", "CRITICAL")
    stream = sys.stderr if to_stderr else sys.stdout
    print(message, file=stream)
    logger = get_logger(logger_name)
    logger.log(getattr(logging, level.upper(), logging.INFO), message)


def log_user_input(prompt: str, user_input: str, context: str = "") -> None:
    """Log a query typed at the interactive prompt."""
    logging_manager.log_user_interaction(
        f"User Input - {prompt}: {user_input}",
        {"prompt": prompt, "input": user_input, "context": context},
    )


def log_analysis_step(step: str, details: Optional[Dict[str, Any]] = None) -> None:
    """Log a pipeline stage transition."""
    logging_manager.log_analysis_progress(f"Pipeline Step: {step}", details)


def log_performance_metric(operation: str, **metrics: Any) -> None:
    logging_manager.log_performance(f"Performance - {operation}", metrics)


def log_structured(
    logger_name: str, level: str, message: str, **extra_fields: Any
) -> None:
    """Log with structured data attached as ``extra_data``."""
    logger = get_logger(logger_name)
    logger.log(
        getattr(logging, level.upper(), logging.INFO),
        message,
        extra={"extra_data": extra_fields},
    )

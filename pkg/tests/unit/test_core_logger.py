"""
Unit tests for core logging functionality.

Tests logger namespacing, console helpers and structured records.
"""

import json
import logging
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from semsearch.core.logger import (  # noqa: E402
    ROOT_LOGGER_NAME,
    StructuredFormatter,
    get_logger,
    log_analysis_step,
    log_performance_metric,
    log_print,
    log_structured,
    log_user_input,
    logging_manager,
)


class TestCoreLogger:
    """Test cases for core logging functionality."""

    def test_get_logger_is_namespaced(self):
        """Test loggers live below the package logger."""
        logger = get_logger("test_logger")

        assert isinstance(logger, logging.Logger)
        assert logger.name == f"{ROOT_LOGGER_NAME}.test_logger"

    def test_get_logger_is_cached(self):
        """Test repeated requests return the same logger."""
        assert get_logger("cached") is get_logger("cached")

    def test_package_logger_does_not_propagate(self):
        """Test records stay inside the package handlers."""
        get_logger("anything")
        assert logging.getLogger(ROOT_LOGGER_NAME).propagate is False

    def test_log_print_info_goes_to_stdout(self, capsys):
        """Test log_print prints informational messages on stdout."""
        log_print("Test log message")

        captured = capsys.readouterr()
        assert "Test log message" in captured.out
        assert "Test log message" not in captured.err

    def test_log_print_warning_goes_to_stderr(self, capsys):
        """Test warnings and errors keep stdout clean."""
        for level in ("WARNING", "ERROR"):
            log_print("careful", level=level)
            captured = capsys.readouterr()
            assert "careful" in captured.err
            assert captured.out == ""

    def test_helpers_do_not_raise(self):
        """Test the structured helpers accept their documented arguments."""
        log_user_input("query", "acacia", context="repl")
        log_analysis_step("similarity", {"candidate_pairs": 3})
        log_performance_metric("parse", elapsed_seconds=0.1, rss_mb=12.0)
        log_structured("test", "INFO", "structured", key="value")

    def test_reset_then_reinitialize(self):
        """Test the manager can be rebuilt from settings."""
        logging_manager.reset()
        logger = get_logger("after_reset")
        assert logging.getLogger(ROOT_LOGGER_NAME).handlers
        assert logger.name.endswith("after_reset")


class TestStructuredFormatter:
    """Test cases for the structured formatter."""

    def _record(self, **extra):
        record = logging.LogRecord(
            "semsearch.test", logging.INFO, __file__, 1, "hello", None, None
        )
        for key, value in extra.items():
            setattr(record, key, value)
        return record

    def test_plain_record(self):
        """Test records without extra data use the plain format."""
        formatter = StructuredFormatter("%(levelname)s %(message)s")
        assert formatter.format(self._record()) == "INFO hello"

    def test_structured_mode_emits_json(self, restore_settings):
        """Test structured_debug renders one JSON object with extra data merged."""
        restore_settings.set("logging.app.structured_debug", True)
        formatter = StructuredFormatter("%(message)s")
        payload = json.loads(formatter.format(self._record(extra_data={"k": 3})))

        assert payload["message"] == "hello"
        assert payload["level"] == "INFO"
        assert payload["k"] == 3

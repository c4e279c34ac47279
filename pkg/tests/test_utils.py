"""
Tests for error mapping, logging setup and JSON config loading.
"""
import json
import logging

import pytest

from utils.config_loader import ConfigLoader
from utils.error_handler import (
    EXIT_IO,
    EXIT_MISSING_RESOURCE,
    EXIT_NUMERICAL,
    EXIT_USAGE,
    ConfigError,
    DimensionError,
    DivergenceError,
    ErrorHandler,
    FormatError,
    ResourceError,
    UsageError,
)
from utils.logger import configure_logging, setup_logger


class TestErrorHandler:
    """Exit-code contract and criticality."""

    @pytest.mark.parametrize(
        "error, code",
        [
            (UsageError("bad flag"), EXIT_USAGE),
            (ConfigError("bad value"), EXIT_USAGE),
            (DimensionError("bad shape"), EXIT_USAGE),
            (FormatError("bad file"), EXIT_IO),
            (OSError("disk"), EXIT_IO),
            (FileNotFoundError("gone"), EXIT_IO),
            (ResourceError("no image"), EXIT_MISSING_RESOURCE),
            (DivergenceError("nan"), EXIT_NUMERICAL),
            (RuntimeError("boom"), EXIT_USAGE),
        ],
    )
    def test_exit_codes(self, error, code):
        assert ErrorHandler().exit_code(error) == code

    def test_config_and_dimension_errors_are_value_errors(self):
        assert isinstance(ConfigError("x"), ValueError)
        assert isinstance(DimensionError("x"), ValueError)
        assert isinstance(ResourceError("x"), FileNotFoundError)

    def test_critical_errors(self):
        handler = ErrorHandler()
        assert handler.is_critical_error(DivergenceError("nan"))
        assert handler.is_critical_error(KeyError("unexpected"))
        assert not handler.is_critical_error(ConfigError("bad"))
        assert not handler.is_critical_error(OSError("disk"))

    def test_handle_logs_and_counts(self, caplog):
        handler = ErrorHandler()
        with caplog.at_level(logging.ERROR):
            code = handler.handle(FormatError("truncated"), "load")
        assert code == EXIT_IO
        assert handler.error_count == 1
        assert "truncated" in caplog.text

    def test_handle_reraises_when_asked(self):
        with pytest.raises(ConfigError):
            ErrorHandler(raise_on_error=True).handle(ConfigError("bad"), "config")

    def test_divergence_error_carries_trace(self):
        error = DivergenceError("nan", trace=[1, 2])
        assert error.trace == [1, 2]


class TestConfigLoader:
    def test_load(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"preset": "diamond", "seed": 3}))
        assert ConfigLoader(path).load() == {"preset": "diamond", "seed": 3}

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError):
            ConfigLoader(path).load()

    def test_top_level_must_be_object(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("[1, 2]")
        with pytest.raises(ConfigError):
            ConfigLoader(path).load()

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            ConfigLoader(tmp_path / "absent.json").load()


class TestLogging:
    def test_configure_logging_with_file(self, tmp_path):
        log_file = tmp_path / "logs" / "run.log"
        configure_logging("INFO", log_file)
        logging.getLogger("tests.logging").info("hello file")
        for handler in logging.getLogger().handlers:
            handler.flush()
        assert "hello file" in log_file.read_text()
        configure_logging("WARNING", None)

    def test_setup_logger_level(self):
        logger = setup_logger("tests.named", logging.DEBUG)
        assert logger.level == logging.DEBUG

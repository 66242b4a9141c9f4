import logging

import pytest

from braidjohnson.config import ConfigSection, global_config
from braidjohnson.logging_config import LazyLogger, get_lazy_logger, get_log_level, set_log_level
from braidjohnson.utils import LOG_LEVEL_ENV_VAR, log_performance, resolve_log_level, setup_logging


@pytest.fixture(autouse=True)
def clear_log_env(monkeypatch):
    monkeypatch.delenv(LOG_LEVEL_ENV_VAR, raising=False)


def test_resolve_log_level_priority(monkeypatch):
    global_config.update_config(ConfigSection.GENERAL, {"log_level": "ERROR"})
    assert resolve_log_level() == logging.ERROR

    monkeypatch.setenv(LOG_LEVEL_ENV_VAR, "info")
    assert resolve_log_level() == logging.INFO

    assert resolve_log_level("debug") == logging.DEBUG


def test_unknown_level_falls_back_to_warning():
    global_config.update_config(ConfigSection.GENERAL, {"log_level": "LOUD"})
    assert resolve_log_level() == logging.WARNING


def test_setup_logging_sets_lazy_level():
    assert setup_logging("INFO") == logging.INFO
    assert get_log_level() == logging.INFO
    assert logging.getLogger().level == logging.INFO


def test_log_performance_logs_duration(caplog):
    set_log_level(logging.DEBUG)

    @log_performance("square")
    def square(x):
        return x * x

    with caplog.at_level(logging.DEBUG):
        assert square(4) == 16
    assert "Performance: square took" in caplog.text


def test_log_performance_reraises(caplog):
    set_log_level(logging.DEBUG)

    @log_performance()
    def broken():
        raise ValueError("bad input")

    with caplog.at_level(logging.DEBUG):
        with pytest.raises(ValueError):
            broken()
    assert "broken failed after" in caplog.text


def test_lazy_logger_skips_below_level(caplog):
    set_log_level(logging.WARNING)
    logger = get_lazy_logger("braidjohnson.tests")
    with caplog.at_level(logging.DEBUG):
        logger.debug("hidden")
        logger.warning("shown")
    assert "hidden" not in caplog.text
    assert "shown" in caplog.text
    assert get_lazy_logger("braidjohnson.tests") is logger


def test_bound_logger_prefixes_context(caplog):
    set_log_level(logging.INFO)
    logger = get_lazy_logger("braidjohnson.tests").bind(check="hurwitz").bind(worker=2)
    assert isinstance(logger, LazyLogger)
    with caplog.at_level(logging.INFO):
        logger.info("started")
    assert "[check=hurwitz worker=2] started" in caplog.text

import functools
import logging
import os
import time
from typing import Callable, TypeVar, ParamSpec, Optional

from braidjohnson.config import global_config
from braidjohnson.logging_config import get_lazy_logger, set_log_level

T = TypeVar('T')
P = ParamSpec('P')

LOG_LEVEL_ENV_VAR = "BRAIDJOHNSON_LOG_LEVEL"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def log_performance(name: Optional[str] = None, severity: Optional[int] = logging.DEBUG):
    """
    A decorator that logs the execution time of a function if logging level is DEBUG or lower.

    Args:
        name: Optional name to use in the log message. If not provided, uses the function name.
    """
    def decorator(func: Callable[P, T]) -> Callable[P, T]:
        @functools.wraps(func)
        def wrapper(*args: P.args, **kwargs: P.kwargs) -> T:
            logger = get_lazy_logger(func.__module__)

            operation_name = name or func.__name__
            start_time = time.perf_counter()

            try:
                result = func(*args, **kwargs)
                duration_ms = (time.perf_counter() - start_time) * 1000
                logger.log(severity or logging.DEBUG, f"Performance: {operation_name} took {duration_ms:.2f}ms")
                return result
            except Exception as e:
                duration_ms = (time.perf_counter() - start_time) * 1000
                logger.debug(f"Performance: {operation_name} failed after {duration_ms:.2f}ms with error: {e}")
                raise

        return wrapper
    return decorator


def resolve_log_level(cli_level: Optional[str] = None) -> int:
    # Priority: CLI args > Environment variable > Config file
    if cli_level:
        log_level = cli_level.upper()
    elif env_level := os.getenv(LOG_LEVEL_ENV_VAR):
        log_level = env_level.upper()
    else:
        log_level = global_config.general.log_level.upper()
    return getattr(logging, log_level, logging.WARNING)


def setup_logging(cli_level: Optional[str] = None) -> int:
    """Initialize logging to stderr; stdout is reserved for command output."""
    level = resolve_log_level(cli_level)
    logging.basicConfig(
        level=level,
        format='%(asctime)s %(levelname)s [%(name)s] %(message)s'
    )
    logging.getLogger().setLevel(level)
    set_log_level(level)
    return level
